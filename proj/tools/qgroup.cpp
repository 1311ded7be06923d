#include "qgroup/cli.hpp"

#include <CLI11.hpp>

#include <iostream>

using namespace qgroup;

namespace {

struct Globals {
    std::string datum;
    std::string quiver = "1->2";
    int q = 4;
    uint64_t budget = default_budget();
    bool json = false;

    Session session() const {
        SessionOptions o;
        o.budget = budget;
        o.q = q;
        o.json = json;
        return Session::load(datum.empty() ? quiver : datum, o);
    }
};

int vertex(const Session& s, int one_based) {
    if (one_based < 1 || static_cast<size_t>(one_based) > s.datum().rank())
        throw std::invalid_argument("vertex " + std::to_string(one_based) + " out of range");
    return one_based - 1;
}

void emit(const Globals& g, const json& body, const std::string& text) {
    if (g.json) std::cout << export_json(body) << "\n";
    else std::cout << text << "\n";
}

std::string f_string(const FElement& x) { return to_string(x, "th"); }

int report(const Globals& g, const SuiteReport& r) {
    if (g.json) std::cout << export_json(r.to_json()) << "\n";
    else std::cout << r.to_text();
    return r.ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact computations with quantum groups, Lusztig symmetries and Hall algebras"};
    Globals g;
    app.add_option("--datum", g.datum, "JSON quiver file")->check(CLI::ExistingFile);
    app.add_option("--quiver", g.quiver, "Quiver shorthand such as 1->2,2->3")->capture_default_str();
    app.add_option("--q", g.q, "Field size for Hall computations")->capture_default_str();
    app.add_option("--budget", g.budget, "Ceiling on exhaustive enumerations")->envname("QGROUP_BUDGET")->capture_default_str();
    app.add_flag("--json", g.json, "JSON output");
    app.require_subcommand(1);

    int exit_code = 0;
    std::string e1, e2, nu, dim, dim_b, qspec, m_spec, n_spec, l_spec, suite;
    int vi = 1, vj = 2, fq = 4;

    // ---- f
    auto* f = app.add_subcommand("f", "Lusztig's algebra f");
    f->require_subcommand(1);
    auto* f_dim = f->add_subcommand("dim", "Dimension and basis of a weight space");
    f_dim->add_option("nu", nu)->required();
    f_dim->callback([&] {
        Session s = g.session();
        const auto wb = s.f()->weight_basis(DimVec::parse(nu));
        json basis = json::array();
        std::string text = "dim " + std::to_string(wb->dim()) + "\n";
        for (size_t k = 0; k < wb->dim(); ++k) {
            basis.push_back(wb->basis_word(k).to_string("th"));
            text += "  " + wb->basis_word(k).to_string("th") + "\n";
        }
        text.pop_back();
        emit(g, {{"weight", wb->weight.to_string()}, {"dim", wb->dim()}, {"basis", basis}}, text);
    });
    auto* f_nf = f->add_subcommand("nf", "Normal form on the basis words");
    f_nf->add_option("expr", e1)->required();
    f_nf->callback([&] {
        Session s = g.session();
        const FElement x = parse_f(*s.f(), e1);
        json body = to_json(x);
        body["weights"] = coordinates_json(*s.f(), x);
        emit(g, body, f_string(x));
    });
    auto* f_dec = f->add_subcommand("decompose", "x = sum_t th_i^(t) x_t with x_t in _if");
    f_dec->add_option("i", vi)->required();
    f_dec->add_option("expr", e1)->required();
    f_dec->callback([&] {
        Session s = g.session();
        const int i = vertex(s, vi);
        const FElement x = parse_f(*s.f(), e1);
        json parts = json::array();
        std::string text;
        for (const auto& [t, xt] : s.f()->i_decompose(i, x)) {
            json p = to_json(xt);
            p["t"] = t;
            parts.push_back(p);
            text += "t=" + std::to_string(t) + ": " + f_string(xt) + "\n";
        }
        if (text.empty()) text = "0\n";
        text.pop_back();
        emit(g, {{"vertex", vi}, {"parts", parts}}, text);
    });

    // ---- u
    auto* u = app.add_subcommand("u", "The quantum group U");
    u->require_subcommand(1);
    auto* u_nf = u->add_subcommand("nf", "F K E normal form");
    u_nf->add_option("expr", e1)->required();
    u_nf->callback([&] {
        Session s = g.session();
        const UElement x = parse_u(*s.u(), e1);
        emit(g, to_json(x), s.u()->to_string(x));
    });
    auto* u_mul = u->add_subcommand("mul", "Product of two elements");
    u_mul->add_option("a", e1)->required();
    u_mul->add_option("b", e2)->required();
    u_mul->callback([&] {
        Session s = g.session();
        const UElement x = s.u()->mul(parse_u(*s.u(), e1), parse_u(*s.u(), e2));
        emit(g, to_json(x), s.u()->to_string(x));
    });
    auto* u_delta = u->add_subcommand("delta", "Coproduct");
    u_delta->add_option("expr", e1)->required();
    u_delta->callback([&] {
        Session s = g.session();
        const UTensor t = s.u()->delta(parse_u(*s.u(), e1));
        emit(g, to_json(t), s.u()->to_string(t));
    });
    auto* u_hopf = u->add_subcommand("hopf-check", "Coassociativity and antipode identities");
    u_hopf->add_option("expr", e1)->required();
    u_hopf->callback([&] {
        Session s = g.session();
        const HopfReport r = s.u()->hopf_axiom_check(parse_u(*s.u(), e1));
        emit(g, {{"coassociative", r.coassociative}, {"antipode_left", r.antipode_left}, {"antipode_right", r.antipode_right}},
             std::string("coassociative ") + (r.coassociative ? "yes" : "no") + "\nantipode left " + (r.antipode_left ? "yes" : "no") +
                 "\nantipode right " + (r.antipode_right ? "yes" : "no"));
        exit_code = r.ok() ? 0 : 1;
    });

    // ---- ti
    auto* ti = app.add_subcommand("ti", "Lusztig symmetries");
    ti->require_subcommand(1);
    for (bool inverse : {false, true}) {
        auto* c = ti->add_subcommand(inverse ? "inv" : "apply", inverse ? "Apply T_i^-1" : "Apply T_i");
        c->add_option("i", vi)->required();
        c->add_option("expr", e1)->required();
        c->callback([&, inverse] {
            Session s = g.session();
            const int i = vertex(s, vi);
            const UElement x = parse_u(*s.u(), e1);
            const UElement y = inverse ? s.braid()->ti_inverse_apply(i, x) : s.braid()->ti_apply(i, x);
            emit(g, to_json(y), s.u()->to_string(y));
        });
    }
    auto* ti_cal = ti->add_subcommand("calibrate", "Compare candidate twist exponents");
    ti_cal->add_option("i", vi)->required();
    ti_cal->callback([&] {
        Session s = g.session();
        const int i = vertex(s, vi);
        std::vector<FElement> samples;
        for (size_t a = 0; a < s.datum().rank(); ++a)
            for (size_t b = 0; b < s.datum().rank(); ++b) {
                DimVec nu = DimVec::unit(s.datum().rank(), static_cast<int>(a)) + DimVec::unit(s.datum().rank(), static_cast<int>(b));
                for (const auto& x : s.f()->sub_if_basis(i, nu, Side::left)) samples.push_back(x);
            }
        const TwistReport r = s.braid()->calibrate_twist(i, samples);
        json cands = json::array(), obs = json::array();
        std::string text;
        for (const auto& c : r.candidates) {
            cands.push_back({{"name", c.name}, {"matches", c.matches}});
            text += (c.matches ? "match     " : "no match  ") + c.name + "\n";
        }
        for (const auto& o : r.observations)
            obs.push_back({{"side", o.side}, {"sample", o.sample}, {"weight", o.weight.to_string()}, {"r", o.r}, {"scalar", o.scalar},
                           {"sign", o.sign}, {"exponent", o.exponent}});
        text += std::to_string(r.observations.size()) + " observations, " + (r.consistent ? "all scalar" : "not all scalar");
        emit(g, {{"vertex", vi}, {"consistent", r.consistent}, {"candidates", cands}, {"observations", obs}}, text);
    });

    // ---- braid
    auto* braid = app.add_subcommand("braid", "Braid relations");
    braid->require_subcommand(1);
    auto* bv = braid->add_subcommand("verify", "Check the braid relation between T_i and T_j");
    bv->add_option("i", vi)->required();
    bv->add_option("j", vj)->required();
    bv->callback([&] {
        Session s = g.session();
        const bool ok = s.braid()->braid_verify(vertex(s, vi), vertex(s, vj));
        emit(g, {{"i", vi}, {"j", vj}, {"ok", ok}}, ok ? "braid relation holds" : "braid relation FAILS");
        exit_code = ok ? 0 : 1;
    });

    // ---- hall
    auto* hall = app.add_subcommand("hall", "Finite-field Hall algebra");
    hall->require_subcommand(1);
    auto oracle = [&](const std::string& quiver, int q) { return HallOracle(Quiver::parse_shorthand(quiver), q, g.budget); };
    auto* hc = hall->add_subcommand("classes", "Iso classes with orbit sizes");
    hc->add_option("quiver", qspec)->required();
    hc->add_option("dim", dim)->required();
    hc->add_option("q", fq)->required();
    hc->callback([&] {
        HallOracle h = oracle(qspec, fq);
        json arr = json::array();
        std::string text;
        for (const auto& c : h.iso_classes(DimVec::parse(dim))) {
            arr.push_back(class_json(h, c));
            text += h.class_name(c.cls) + "  orbit " + std::to_string(c.orbit_size) + "\n";
        }
        text.pop_back();
        emit(g, {{"quiver", qspec}, {"q", fq}, {"classes", arr}}, text);
    });
    auto* hn = hall->add_subcommand("number", "Hall number: submodules U of M with U = L, M/U = N");
    hn->add_option("quiver", qspec)->required();
    hn->add_option("q", fq)->required();
    hn->add_option("M", m_spec, "dim:hex point, e.g. (1,1):1")->required();
    hn->add_option("N", n_spec)->required();
    hn->add_option("L", l_spec)->required();
    hn->callback([&] {
        HallOracle h = oracle(qspec, fq);
        const IsoClass m = parse_class(h, m_spec);
        const uint64_t c = h.hall_number(h.representative(m), parse_class(h, n_spec), parse_class(h, l_spec));
        emit(g, {{"M", h.class_name(m)}, {"number", c}}, std::to_string(c));
    });
    auto* hs = hall->add_subcommand("strata", "Point counts of the strata at a sink or source");
    hs->add_option("quiver", qspec)->required();
    hs->add_option("dim", dim)->required();
    hs->add_option("q", fq)->required();
    hs->add_option("i", vi)->required();
    hs->callback([&] {
        HallOracle h = oracle(qspec, fq);
        const auto counts = h.stratum_counts(DimVec::parse(dim), vi - 1);
        json arr = json::array();
        std::string text;
        uint64_t sum = 0;
        for (size_t r = 0; r < counts.size(); ++r) {
            arr.push_back(counts[r]);
            sum += counts[r];
            text += "r=" + std::to_string(r) + ": " + std::to_string(counts[r]) + "\n";
        }
        text += "total " + std::to_string(sum);
        emit(g, {{"counts", arr}, {"total", sum}}, text);
    });
    auto* hcmp = hall->add_subcommand("compare", "Hall products of monomial functions against f at v = sqrt(q)");
    hcmp->add_option("quiver", qspec)->required();
    hcmp->add_option("dimA", dim)->required();
    hcmp->add_option("dimB", dim_b)->required();
    hcmp->callback([&] {
        HallOracle h = oracle(qspec, g.q);
        FAlgebra fa(CartanDatum::load(h.quiver()));
        const CompareReport r = specialize_compare(h, fa, DimVec::parse(dim), DimVec::parse(dim_b));
        json arr = json::array();
        std::string text;
        for (const auto& e : r.entries) {
            arr.push_back({{"x", e.x.to_string("th")}, {"y", e.y.to_string("th")}, {"z", e.z.to_string("th")}, {"hall", e.hall.get_str()},
                           {"f", e.falg.get_str()}, {"match", e.match}});
            text += e.x.to_string("th") + " . " + e.y.to_string("th") + " -> " + e.z.to_string("th") + ": hall " + e.hall.get_str() +
                    ", f " + e.falg.get_str() + (e.match ? "" : "  MISMATCH") + "\n";
        }
        text += std::to_string(r.entries.size()) + " constants, " + std::to_string(r.mismatches) + " mismatches";
        emit(g, {{"twist", twist_name(h.twist())}, {"spanning", r.spanning}, {"mismatches", r.mismatches}, {"entries", arr}}, text);
        exit_code = r.ok() ? 0 : 1;
    });

    // ---- double
    auto* dbl = app.add_subcommand("double", "Drinfeld double of the half algebras");
    dbl->require_subcommand(1);
    auto* dm = dbl->add_subcommand("mul", "Product in the double, e.g. p(th1) m(th1)");
    dm->add_option("a", e1)->required();
    dm->add_option("b", e2)->required();
    dm->callback([&] {
        Session s = g.session();
        const auto& D = *s.dbl();
        const DoubleElement x = D.double_mul(parse_double(D, e1), parse_double(D, e2));
        emit(g, to_json(x), D.to_string(x));
    });
    auto* dc = dbl->add_subcommand("calibrate", "Solve for the pairing constant");
    dc->callback([&] {
        Session s = g.session();
        const auto cal = DrinfeldDouble::calibrate_pairing(s.f());
        json arr = json::array();
        std::string text;
        for (size_t i = 0; i < cal.constants.size(); ++i) {
            arr.push_back(cal.constants[i].to_string());
            text += "vertex " + std::to_string(i + 1) + ": " + cal.constants[i].to_string() + "\n";
        }
        text += cal.consistent ? "consistent" : "INCONSISTENT";
        emit(g, {{"constants", arr}, {"consistent", cal.consistent}}, text);
        exit_code = cal.consistent ? 0 : 1;
    });
    auto* dv = dbl->add_subcommand("verify", "Run the double suite");
    dv->callback([&] { exit_code = report(g, g.session().run_suite("verify-double")); });

    // ---- verify
    auto* verify = app.add_subcommand("verify", "Run a verification suite");
    verify->add_option("suite", suite)->required()->check(CLI::IsMember(Session::suite_names()));
    verify->callback([&] { exit_code = report(g, g.session().run_suite(suite)); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return exit_code;
}
