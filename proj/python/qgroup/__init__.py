"""Exact computations with quantum groups, Lusztig symmetries and Hall algebras."""

import json

from ._qgroup import (
    SCHEMA,
    BudgetExceeded,
    ParseError,
    Session,
    hall_classes,
    hall_compare,
    hall_strata,
    scalar,
)


def verify(session, suite):
    """Run a verification suite and return its report as a dict."""
    return json.loads(session.verify_json(suite))


__all__ = [
    "SCHEMA",
    "BudgetExceeded",
    "ParseError",
    "Session",
    "hall_classes",
    "hall_compare",
    "hall_strata",
    "scalar",
    "verify",
]
