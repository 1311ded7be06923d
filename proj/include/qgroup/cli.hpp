#pragma once

#include "qgroup/braid.hpp"
#include "qgroup/double.hpp"
#include "qgroup/hallfq.hpp"

#include <json.hpp>

#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qgroup {

/// Syntax or elaboration error; position is a 0-based character offset.
class ParseError : public std::invalid_argument {
public:
    ParseError(const std::string& msg, size_t position);
    size_t position() const { return position_; }

private:
    size_t position_;
};

// Expression grammar shared by every domain:
//   expr  := term (('+' | '-') term)*
//   term  := unary (('*' | '/') unary)*        division only by scalars
//   unary := '-' unary | power
//   power := atom ('^' ['-'] INT | '^(' INT ')')*   ^(n) is the divided power
//   atom  := INT | 'v' | '(' expr ')' | generator
// Generators per domain: th<i> (f); E<i>, F<i>, K(c1,...,cn) (U);
// k(c1,...,cn), p(<f expr>), m(<f expr>) (half algebras and the double).
FreeElement parse_free(std::string_view src, size_t rank);
FElement parse_f(const FAlgebra& f, std::string_view src);
UElement parse_u(const UAlgebra& u, std::string_view src);
HalfElement parse_half(const DrinfeldDouble& d, Half s, std::string_view src);
DoubleElement parse_double(const DrinfeldDouble& d, std::string_view src);
RatFunc parse_scalar(std::string_view src);

using json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "qgroup.v1";

json to_json(const FElement& x);
json to_json(const UElement& x);
json to_json(const UTensor& t);
json to_json(const DoubleElement& x);
json to_json(Half s, const HalfElement& x);
/// Weight-by-weight coordinates of x on the bases of f.
json coordinates_json(const FAlgebra& f, const FElement& x);
json class_json(const HallOracle& h, const ClassInfo& c);
/// Adds the schema tag in front and dumps with two-space indent.
std::string export_json(const json& body);

struct CheckResult {
    std::string check;
    std::string status;  // "pass", "fail" or "skipped"
    long millis = 0;
    std::string detail;
};

struct SuiteReport {
    std::string suite;
    std::vector<CheckResult> checks;
    bool ok() const;
    json to_json() const;
    std::string to_text() const;
};

struct SessionOptions {
    uint64_t budget = default_budget();
    int q = 4;
    bool json = false;
};

/// A loaded Cartan datum plus lazily built algebras.
class Session {
public:
    explicit Session(const Quiver& q, SessionOptions opts = {});
    /// A quiver shorthand ("1->2") or the path of a JSON quiver file.
    static Session load(const std::string& quiver_or_file, SessionOptions opts = {});

    const CartanDatum& datum() const { return datum_; }
    const Quiver& quiver() const { return datum_.quiver(); }
    const SessionOptions& options() const { return opts_; }

    std::shared_ptr<const FAlgebra> f() const;
    std::shared_ptr<const UAlgebra> u() const;
    std::shared_ptr<const Braid> braid() const;
    std::shared_ptr<const DrinfeldDouble> dbl() const;
    HallOracle hall(int q) const { return HallOracle(quiver(), q, opts_.budget); }

    /// verify-f, verify-u, verify-ti, verify-braid, verify-hall, verify-double, verify-all
    SuiteReport run_suite(const std::string& name) const;
    static const std::vector<std::string>& suite_names();

private:
    using Check = std::pair<std::string, std::function<bool()>>;
    std::vector<Check> suite_checks(const std::string& name) const;

    CartanDatum datum_;
    SessionOptions opts_;
    mutable std::shared_ptr<FAlgebra> f_;
    mutable std::shared_ptr<UAlgebra> u_;
    mutable std::shared_ptr<Braid> braid_;
    mutable std::shared_ptr<DrinfeldDouble> dbl_;
};

/// "(1,1):1f" -> the class of the point with those hex digits.
IsoClass parse_class(const HallOracle& h, std::string_view spec);
std::string point_hex(const HallOracle& h, const std::vector<uint8_t>& point);

}  // namespace qgroup
