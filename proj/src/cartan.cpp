#include "qgroup/cartan.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>
#include <stdexcept>

namespace qgroup {

namespace {

std::string join_ints(const std::vector<int>& v) {
    std::string out;
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(v[i]);
    }
    return out;
}

std::string trim(std::string_view s) {
    size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

bool is_integer_label(const std::string& s) {
    if (s.empty()) return false;
    size_t k = s[0] == '-' ? 1 : 0;
    if (k == s.size()) return false;
    return std::all_of(s.begin() + static_cast<long>(k), s.end(),
                       [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

}  // namespace

// ---------------------------------------------------------------- DimVec / Coweight

DimVec DimVec::unit(size_t n, int i) {
    DimVec d = zero(n);
    d.v.at(static_cast<size_t>(i)) = 1;
    return d;
}

int DimVec::total() const {
    int t = 0;
    for (int x : v) t += x;
    return t;
}

bool DimVec::is_zero() const {
    return std::all_of(v.begin(), v.end(), [](int x) { return x == 0; });
}

bool DimVec::is_dimvec() const {
    return std::all_of(v.begin(), v.end(), [](int x) { return x >= 0; });
}

DimVec& DimVec::operator+=(const DimVec& o) {
    if (v.size() != o.v.size()) throw std::invalid_argument("DimVec: rank mismatch");
    for (size_t i = 0; i < v.size(); ++i) v[i] += o.v[i];
    return *this;
}

DimVec& DimVec::operator-=(const DimVec& o) {
    if (v.size() != o.v.size()) throw std::invalid_argument("DimVec: rank mismatch");
    for (size_t i = 0; i < v.size(); ++i) v[i] -= o.v[i];
    return *this;
}

std::string DimVec::to_string() const { return "(" + join_ints(v) + ")"; }

DimVec DimVec::parse(std::string_view text) {
    std::string s = trim(text);
    if (!s.empty() && s.front() == '(') {
        if (s.back() != ')') throw std::invalid_argument("DimVec: unbalanced parenthesis in '" + s + "'");
        s = s.substr(1, s.size() - 2);
    }
    DimVec d;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!is_integer_label(item)) throw std::invalid_argument("DimVec: bad entry '" + item + "'");
        d.v.push_back(std::stoi(item));
    }
    if (d.v.empty()) throw std::invalid_argument("DimVec: empty vector");
    return d;
}

Coweight Coweight::h(size_t n, int i) {
    Coweight c = zero(n);
    c.v.at(static_cast<size_t>(i)) = 1;
    return c;
}

bool Coweight::is_zero() const {
    return std::all_of(v.begin(), v.end(), [](int x) { return x == 0; });
}

Coweight Coweight::operator-() const {
    Coweight c = *this;
    for (auto& x : c.v) x = -x;
    return c;
}

Coweight& Coweight::operator+=(const Coweight& o) {
    if (v.size() != o.v.size()) throw std::invalid_argument("Coweight: rank mismatch");
    for (size_t i = 0; i < v.size(); ++i) v[i] += o.v[i];
    return *this;
}

Coweight& Coweight::operator-=(const Coweight& o) {
    if (v.size() != o.v.size()) throw std::invalid_argument("Coweight: rank mismatch");
    for (size_t i = 0; i < v.size(); ++i) v[i] -= o.v[i];
    return *this;
}

std::string Coweight::to_string() const { return "(" + join_ints(v) + ")"; }

// ---------------------------------------------------------------- Quiver

Quiver::Quiver(std::vector<std::string> labels, std::vector<Arrow> arrows)
    : labels_(std::move(labels)), arrows_(std::move(arrows)) {
    std::set<std::string> seen;
    for (const auto& l : labels_)
        if (!seen.insert(l).second) throw std::invalid_argument("Quiver: duplicate vertex '" + l + "'");
    const int n = static_cast<int>(labels_.size());
    for (const auto& a : arrows_) {
        if (a.source < 0 || a.source >= n || a.target < 0 || a.target >= n)
            throw std::invalid_argument("Quiver: arrow endpoint out of range");
        if (a.source == a.target)
            throw std::invalid_argument("Quiver: loop at vertex '" + labels_[static_cast<size_t>(a.source)] + "'");
    }
}

Quiver Quiver::parse_shorthand(std::string_view text) {
    std::vector<std::string> order;
    std::vector<std::pair<std::string, std::string>> edges;
    auto note = [&](const std::string& l) {
        if (l.empty()) throw std::invalid_argument("Quiver: empty vertex label");
        if (std::find(order.begin(), order.end(), l) == order.end()) order.push_back(l);
    };
    std::stringstream ss{std::string(text)};
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        auto pos = item.find("->");
        if (pos == std::string::npos) {
            note(item);
            continue;
        }
        std::string s = trim(std::string_view(item).substr(0, pos));
        std::string t = trim(std::string_view(item).substr(pos + 2));
        note(s);
        note(t);
        edges.emplace_back(s, t);
    }
    if (order.empty()) throw std::invalid_argument("Quiver: no vertices in '" + std::string(text) + "'");
    if (std::all_of(order.begin(), order.end(), is_integer_label))
        std::stable_sort(order.begin(), order.end(),
                         [](const std::string& a, const std::string& b) { return std::stol(a) < std::stol(b); });
    auto idx = [&](const std::string& l) {
        return static_cast<int>(std::find(order.begin(), order.end(), l) - order.begin());
    };
    std::vector<Arrow> arrows;
    for (const auto& [s, t] : edges) arrows.push_back({idx(s), idx(t)});
    return Quiver(order, arrows);
}

Quiver Quiver::from_json(std::string_view text) {
    auto j = nlohmann::json::parse(text);
    std::vector<std::string> labels;
    for (const auto& v : j.at("vertices")) labels.push_back(v.is_string() ? v.get<std::string>() : v.dump());
    auto find = [&](const nlohmann::json& v) {
        std::string l = v.is_string() ? v.get<std::string>() : v.dump();
        auto it = std::find(labels.begin(), labels.end(), l);
        if (it == labels.end()) throw std::invalid_argument("Quiver: unknown vertex '" + l + "' in arrow");
        return static_cast<int>(it - labels.begin());
    };
    std::vector<Arrow> arrows;
    if (j.contains("arrows"))
        for (const auto& a : j.at("arrows")) arrows.push_back({find(a.at(0)), find(a.at(1))});
    return Quiver(labels, arrows);
}

std::string Quiver::to_json() const {
    nlohmann::json j;
    j["vertices"] = labels_;
    j["arrows"] = nlohmann::json::array();
    for (const auto& a : arrows_)
        j["arrows"].push_back({labels_[static_cast<size_t>(a.source)], labels_[static_cast<size_t>(a.target)]});
    return j.dump();
}

std::string Quiver::to_shorthand() const {
    std::string out;
    std::vector<bool> touched(size(), false);
    for (const auto& a : arrows_) {
        if (!out.empty()) out += ",";
        out += labels_[static_cast<size_t>(a.source)] + "->" + labels_[static_cast<size_t>(a.target)];
        touched[static_cast<size_t>(a.source)] = touched[static_cast<size_t>(a.target)] = true;
    }
    for (size_t i = 0; i < size(); ++i)
        if (!touched[i]) out += (out.empty() ? "" : ",") + labels_[i];
    return out;
}

int Quiver::index_of(std::string_view label) const {
    auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end()) throw std::invalid_argument("Quiver: unknown vertex '" + std::string(label) + "'");
    return static_cast<int>(it - labels_.begin());
}

bool Quiver::is_sink(int i) const {
    return std::none_of(arrows_.begin(), arrows_.end(), [i](const Arrow& a) { return a.source == i; });
}

bool Quiver::is_source(int i) const {
    return std::none_of(arrows_.begin(), arrows_.end(), [i](const Arrow& a) { return a.target == i; });
}

Quiver Quiver::sigma(int i) const {
    std::vector<size_t> pos;
    for (size_t k = 0; k < arrows_.size(); ++k)
        if (arrows_[k].source == i || arrows_[k].target == i) pos.push_back(k);
    return sigma_arrows(pos);
}

Quiver Quiver::sigma_arrows(const std::vector<size_t>& arrow_positions) const {
    std::vector<Arrow> arrows = arrows_;
    for (size_t k : arrow_positions) {
        if (k >= arrows.size()) throw std::invalid_argument("Quiver: arrow position out of range");
        std::swap(arrows[k].source, arrows[k].target);
    }
    return Quiver(labels_, arrows);
}

std::vector<Quiver> Quiver::all_orientations() const {
    std::vector<Quiver> out;
    const size_t m = arrows_.size();
    for (size_t mask = 0; mask < (size_t{1} << m); ++mask) {
        std::vector<size_t> pos;
        for (size_t k = 0; k < m; ++k)
            if (mask & (size_t{1} << k)) pos.push_back(k);
        out.push_back(sigma_arrows(pos));
    }
    return out;
}

int euler_form(const DimVec& a, const DimVec& b, const Quiver& q) {
    if (a.size() != q.size() || b.size() != q.size()) throw std::invalid_argument("euler_form: rank mismatch");
    int s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    for (const auto& ar : q.arrows()) s -= a[static_cast<size_t>(ar.source)] * b[static_cast<size_t>(ar.target)];
    return s;
}

// ---------------------------------------------------------------- CartanDatum

CartanDatum CartanDatum::load(const Quiver& q) {
    CartanDatum d;
    d.quiver_ = q;
    const size_t n = q.size();
    d.cartan_.assign(n * n, 0);
    for (size_t i = 0; i < n; ++i) d.cartan_[i * n + i] = 2;
    for (const auto& a : q.arrows()) {
        const auto s = static_cast<size_t>(a.source), t = static_cast<size_t>(a.target);
        d.cartan_[s * n + t] -= 1;
        d.cartan_[t * n + s] -= 1;
    }
    return d;
}

CartanDatum CartanDatum::type_a(size_t n) {
    std::string s;
    for (size_t i = 1; i < n; ++i) s += (i > 1 ? "," : "") + std::to_string(i) + "->" + std::to_string(i + 1);
    if (n == 1) s = "1";
    return load(Quiver::parse_shorthand(s));
}

int CartanDatum::sym_form(const DimVec& x, const DimVec& y) const {
    const size_t n = rank();
    if (x.size() != n || y.size() != n) throw std::invalid_argument("sym_form: rank mismatch");
    int s = 0;
    for (size_t i = 0; i < n; ++i) {
        if (x[i] == 0) continue;
        for (size_t j = 0; j < n; ++j) s += x[i] * cartan_[i * n + j] * y[j];
    }
    return s;
}

int CartanDatum::sym_form_unit(int i, const DimVec& y) const {
    const size_t n = rank();
    int s = 0;
    for (size_t j = 0; j < n; ++j) s += cartan_[static_cast<size_t>(i) * n + j] * y[j];
    return s;
}

int CartanDatum::alpha(int i, const Coweight& mu) const {
    const size_t n = rank();
    int s = 0;
    for (size_t j = 0; j < n; ++j) s += mu[j] * cartan_[j * n + static_cast<size_t>(i)];
    return s;
}

int CartanDatum::alpha(const DimVec& nu, const Coweight& mu) const {
    int s = 0;
    for (size_t i = 0; i < nu.size(); ++i)
        if (nu[i] != 0) s += nu[i] * alpha(static_cast<int>(i), mu);
    return s;
}

DimVec CartanDatum::reflect(int i, const DimVec& nu) const {
    DimVec out = nu;
    out[static_cast<size_t>(i)] -= sym_form_unit(i, nu);
    return out;
}

Coweight CartanDatum::reflect(int i, const Coweight& mu) const {
    Coweight out = mu;
    out[static_cast<size_t>(i)] -= alpha(i, mu);
    return out;
}

std::vector<std::vector<int>> CartanDatum::matrix() const {
    const size_t n = rank();
    std::vector<std::vector<int>> m(n, std::vector<int>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) m[i][j] = cartan_[i * n + j];
    return m;
}

}  // namespace qgroup
