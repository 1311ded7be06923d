#include "qgroup/hallfq.hpp"

#include "qgroup/linalg.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>

namespace qgroup {

uint64_t default_budget() {
    if (const char* env = std::getenv("QGROUP_BUDGET")) {
        char* end = nullptr;
        unsigned long long b = std::strtoull(env, &end, 10);
        if (end != env && *end == '\0') return b;
    }
    return 10'000'000;
}

// ---------------------------------------------------------------- Fq

namespace {

int small_pow(int b, int e) {
    int r = 1;
    while (e-- > 0) r *= b;
    return r;
}

std::vector<int> digits(int x, int p, int d) {
    std::vector<int> out(static_cast<size_t>(d));
    for (int k = 0; k < d; ++k, x /= p) out[static_cast<size_t>(k)] = x % p;
    return out;
}

int undigits(const std::vector<int>& c, int p) {
    int x = 0;
    for (size_t k = c.size(); k-- > 0;) x = x * p + c[k];
    return x;
}

// Product of two residues modulo the monic polynomial `mod` (degree d).
int poly_mulmod(int a, int b, int p, int d, const std::vector<int>& mod) {
    std::vector<int> x = digits(a, p, d), y = digits(b, p, d), z(static_cast<size_t>(2 * d), 0);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) z[static_cast<size_t>(i + j)] = (z[static_cast<size_t>(i + j)] + x[static_cast<size_t>(i)] * y[static_cast<size_t>(j)]) % p;
    for (int k = 2 * d - 1; k >= d; --k) {
        int c = z[static_cast<size_t>(k)];
        if (c == 0) continue;
        for (int j = 0; j <= d; ++j) {
            auto& t = z[static_cast<size_t>(k - d + j)];
            t = ((t - c * mod[static_cast<size_t>(j)]) % p + p) % p;
        }
    }
    z.resize(static_cast<size_t>(d));
    return undigits(z, p);
}

}  // namespace

Fq::Fq(int q) : q_(q) {
    if (q < 2 || q > 256) throw std::invalid_argument("Fq: field size must be a prime power in [2, 256]");
    p_ = 0;
    for (int c = 2; c <= q; ++c)
        if (q % c == 0) {
            p_ = c;
            break;
        }
    d_ = 0;
    for (int x = q; x > 1; x /= p_) {
        if (x % p_ != 0) throw std::invalid_argument("Fq: " + std::to_string(q) + " is not a prime power");
        ++d_;
    }
    const size_t qq = static_cast<size_t>(q);
    add_.assign(qq * qq, 0);
    neg_.assign(qq, 0);
    for (int a = 0; a < q; ++a) {
        auto da = digits(a, p_, d_);
        std::vector<int> na(da.size());
        for (size_t k = 0; k < da.size(); ++k) na[k] = (p_ - da[k]) % p_;
        neg_[static_cast<size_t>(a)] = static_cast<uint8_t>(undigits(na, p_));
        for (int b = 0; b < q; ++b) {
            auto db = digits(b, p_, d_);
            for (size_t k = 0; k < da.size(); ++k) db[k] = (db[k] + da[k]) % p_;
            add_[static_cast<size_t>(a) * qq + static_cast<size_t>(b)] = static_cast<uint8_t>(undigits(db, p_));
        }
    }
    // First monic modulus (in base-p order of its lower coefficients) whose
    // residue ring has a primitive element of order q - 1.
    for (int low = 0; low < q; ++low) {
        modulus_ = digits(low, p_, d_);
        modulus_.push_back(1);
        if (d_ > 1 && modulus_[0] == 0) continue;
        for (int g = 1; g < q; ++g) {
            std::vector<int> ex;
            std::vector<bool> seen(qq, false);
            int x = 1;
            while (!seen[static_cast<size_t>(x)]) {
                seen[static_cast<size_t>(x)] = true;
                ex.push_back(x);
                x = poly_mulmod(x, g, p_, d_, modulus_);
            }
            if (static_cast<int>(ex.size()) == q - 1 && x == 1) {
                exp_ = ex;
                log_.assign(qq, -1);
                for (int k = 0; k < q - 1; ++k) log_[static_cast<size_t>(exp_[static_cast<size_t>(k)])] = k;
                break;
            }
        }
        if (!exp_.empty()) break;
    }
    if (exp_.empty()) throw std::logic_error("Fq: no primitive element found");
    // Table check: multiplication by log/antilog agrees with polynomial arithmetic.
    for (int a = 1; a < q; ++a)
        for (int b = a; b < q; ++b)
            if (mul(a, b) != poly_mulmod(a, b, p_, d_, modulus_) || mul(a, b) == 0)
                throw std::logic_error("Fq: multiplication table check failed");
    for (int a = 0; a < q; ++a)
        if (add(a, neg(a)) != 0 || add(a, 0) != a) throw std::logic_error("Fq: addition table check failed");
}

int Fq::inv(int a) const {
    if (a == 0) throw std::domain_error("Fq: inverse of zero");
    return exp_[static_cast<size_t>((q_ - 1 - log_[static_cast<size_t>(a)]) % (q_ - 1))];
}

int Fq::log(int a) const {
    if (a == 0) throw std::domain_error("Fq: log of zero");
    return log_[static_cast<size_t>(a)];
}

std::vector<int> Fq::additive_basis() const {
    std::vector<int> out;
    for (int k = 0; k < d_; ++k) out.push_back(small_pow(p_, k));
    return out;
}

// ---------------------------------------------------------------- matrices

FqMatrix FqMatrix::identity(int n) {
    FqMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

FqMatrix mat_mul(const Fq& k, const FqMatrix& x, const FqMatrix& y) {
    if (x.cols != y.rows) throw std::invalid_argument("mat_mul: shape mismatch");
    FqMatrix z(x.rows, y.cols);
    for (int i = 0; i < x.rows; ++i)
        for (int l = 0; l < x.cols; ++l) {
            const int a = x.at(i, l);
            if (a == 0) continue;
            for (int j = 0; j < y.cols; ++j)
                z.at(i, j) = static_cast<uint8_t>(k.add(z.at(i, j), k.mul(a, y.at(l, j))));
        }
    return z;
}

std::vector<int> mat_rref(const Fq& k, FqMatrix& m) {
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < m.cols && r < m.rows; ++c) {
        int p = -1;
        for (int i = r; i < m.rows; ++i)
            if (m.at(i, c) != 0) {
                p = i;
                break;
            }
        if (p < 0) continue;
        for (int j = 0; j < m.cols; ++j) std::swap(m.at(r, j), m.at(p, j));
        const int inv = k.inv(m.at(r, c));
        for (int j = 0; j < m.cols; ++j) m.at(r, j) = static_cast<uint8_t>(k.mul(m.at(r, j), inv));
        for (int i = 0; i < m.rows; ++i) {
            if (i == r || m.at(i, c) == 0) continue;
            const int f = m.at(i, c);
            for (int j = 0; j < m.cols; ++j) m.at(i, j) = static_cast<uint8_t>(k.sub(m.at(i, j), k.mul(f, m.at(r, j))));
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

int mat_rank(const Fq& k, FqMatrix m) { return static_cast<int>(mat_rref(k, m).size()); }

FqMatrix mat_inverse(const Fq& k, const FqMatrix& m) {
    if (m.rows != m.cols) throw std::invalid_argument("mat_inverse: not square");
    const int n = m.rows;
    FqMatrix aug(n, 2 * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, n + i) = 1;
    }
    auto piv = mat_rref(k, aug);
    if (static_cast<int>(piv.size()) < n || (n && piv.back() >= n)) throw std::domain_error("mat_inverse: singular");
    FqMatrix out(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out.at(i, j) = aug.at(i, n + j);
    return out;
}

FqMatrix mat_kernel(const Fq& k, const FqMatrix& m) {
    FqMatrix r = m;
    auto piv = mat_rref(k, r);
    std::vector<bool> is_piv(static_cast<size_t>(m.cols), false);
    for (int c : piv) is_piv[static_cast<size_t>(c)] = true;
    std::vector<int> free;
    for (int c = 0; c < m.cols; ++c)
        if (!is_piv[static_cast<size_t>(c)]) free.push_back(c);
    FqMatrix out(m.cols, static_cast<int>(free.size()));
    for (size_t f = 0; f < free.size(); ++f) {
        const int col = static_cast<int>(f);
        out.at(free[f], col) = 1;
        for (size_t s = 0; s < piv.size(); ++s) out.at(piv[s], col) = static_cast<uint8_t>(k.neg(r.at(static_cast<int>(s), free[f])));
    }
    return out;
}

// ---------------------------------------------------------------- representations

QuiverRep QuiverRep::zero(const Quiver& q, const DimVec& dim) {
    if (dim.size() != q.size()) throw std::invalid_argument("QuiverRep: dimension vector has wrong rank");
    QuiverRep x{q, dim, {}};
    for (const auto& a : q.arrows()) x.mats.emplace_back(dim[static_cast<size_t>(a.target)], dim[static_cast<size_t>(a.source)]);
    return x;
}

void QuiverRep::validate() const {
    if (dim.size() != quiver.size() || !dim.is_dimvec()) throw std::invalid_argument("QuiverRep: bad dimension vector");
    if (mats.size() != quiver.arrows().size()) throw std::invalid_argument("QuiverRep: one matrix per arrow expected");
    for (size_t k = 0; k < mats.size(); ++k) {
        const auto& a = quiver.arrows()[k];
        if (mats[k].rows != dim[static_cast<size_t>(a.target)] || mats[k].cols != dim[static_cast<size_t>(a.source)])
            throw std::invalid_argument("QuiverRep: matrix shape does not match the dimension vector");
    }
}

namespace {

std::vector<uint8_t> point_of(const QuiverRep& x) {
    std::vector<uint8_t> out;
    for (const auto& m : x.mats) out.insert(out.end(), m.a.begin(), m.a.end());
    return out;
}

// A k-dimensional subspace of F^n as the rows of its reduced echelon form.
struct Subspace {
    FqMatrix rows;
    std::vector<int> pivots;
};

std::vector<Subspace> enumerate_subspaces(const Fq& k, int n, int dim) {
    std::vector<Subspace> out;
    if (dim < 0 || dim > n) return out;
    std::vector<int> piv(static_cast<size_t>(dim));
    std::iota(piv.begin(), piv.end(), 0);
    const int q = k.size();
    while (true) {
        std::vector<std::pair<int, int>> free;
        std::vector<bool> is_piv(static_cast<size_t>(n), false);
        for (int c : piv) is_piv[static_cast<size_t>(c)] = true;
        for (int r = 0; r < dim; ++r)
            for (int c = piv[static_cast<size_t>(r)] + 1; c < n; ++c)
                if (!is_piv[static_cast<size_t>(c)]) free.emplace_back(r, c);
        std::vector<int> vals(free.size(), 0);
        while (true) {
            Subspace s{FqMatrix(dim, n), piv};
            for (int r = 0; r < dim; ++r) s.rows.at(r, piv[static_cast<size_t>(r)]) = 1;
            for (size_t f = 0; f < free.size(); ++f) s.rows.at(free[f].first, free[f].second) = static_cast<uint8_t>(vals[f]);
            out.push_back(std::move(s));
            size_t f = 0;
            while (f < vals.size() && ++vals[f] == q) vals[f++] = 0;
            if (f == vals.size()) break;
        }
        int r = dim - 1;
        while (r >= 0 && piv[static_cast<size_t>(r)] == n - dim + r) --r;
        if (r < 0) break;
        ++piv[static_cast<size_t>(r)];
        for (int s = r + 1; s < dim; ++s) piv[static_cast<size_t>(s)] = piv[static_cast<size_t>(s - 1)] + 1;
    }
    return out;
}

// Number of k-dimensional subspaces of F_q^n, saturating.
uint64_t gaussian_count(int n, int k, int q) {
    if (k < 0 || k > n) return 0;
    mpz_class num = 1, den = 1;
    for (int j = 0; j < k; ++j) {
        mpz_class a, b;
        mpz_ui_pow_ui(a.get_mpz_t(), static_cast<unsigned long>(q), static_cast<unsigned long>(n - j));
        mpz_ui_pow_ui(b.get_mpz_t(), static_cast<unsigned long>(q), static_cast<unsigned long>(j + 1));
        num *= a - 1;
        den *= b - 1;
    }
    mpz_class r = num / den;
    return r.fits_ulong_p() ? r.get_ui() : std::numeric_limits<uint64_t>::max();
}

uint64_t sat_mul(uint64_t a, uint64_t b) {
    if (a != 0 && b > std::numeric_limits<uint64_t>::max() / a) return std::numeric_limits<uint64_t>::max();
    return a * b;
}

// w - sum_k w[piv_k] row_k for a vector w in F^n.
std::vector<uint8_t> reduce(const Fq& k, std::vector<uint8_t> w, const Subspace& s) {
    for (size_t r = 0; r < s.pivots.size(); ++r) {
        const int c = w[static_cast<size_t>(s.pivots[r])];
        if (c == 0) continue;
        for (int j = 0; j < s.rows.cols; ++j)
            w[static_cast<size_t>(j)] = static_cast<uint8_t>(k.sub(w[static_cast<size_t>(j)], k.mul(c, s.rows.at(static_cast<int>(r), j))));
    }
    return w;
}

std::vector<uint8_t> apply(const Fq& k, const FqMatrix& m, const std::vector<uint8_t>& x) {
    std::vector<uint8_t> out(static_cast<size_t>(m.rows), 0);
    for (int i = 0; i < m.rows; ++i) {
        int acc = 0;
        for (int j = 0; j < m.cols; ++j) acc = k.add(acc, k.mul(m.at(i, j), x[static_cast<size_t>(j)]));
        out[static_cast<size_t>(i)] = static_cast<uint8_t>(acc);
    }
    return out;
}

std::vector<int> complement(const std::vector<int>& piv, int n) {
    std::vector<int> out;
    for (int c = 0; c < n; ++c)
        if (std::find(piv.begin(), piv.end(), c) == piv.end()) out.push_back(c);
    return out;
}

// Generators of GL_n(F_q), each with its inverse.
std::vector<std::pair<FqMatrix, FqMatrix>> gl_generators(const Fq& k, int n) {
    std::vector<std::pair<FqMatrix, FqMatrix>> out;
    if (n == 0) return out;
    FqMatrix d = FqMatrix::identity(n), di = FqMatrix::identity(n);
    d.at(0, 0) = static_cast<uint8_t>(k.primitive());
    di.at(0, 0) = static_cast<uint8_t>(k.inv(k.primitive()));
    if (k.size() > 2) out.emplace_back(d, di);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            if (a == b) continue;
            for (int t : k.additive_basis()) {
                FqMatrix g = FqMatrix::identity(n), gi = FqMatrix::identity(n);
                g.at(a, b) = static_cast<uint8_t>(t);
                gi.at(a, b) = static_cast<uint8_t>(k.neg(t));
                out.emplace_back(g, gi);
            }
        }
    return out;
}

}  // namespace

// ---------------------------------------------------------------- HallElement

void HallElement::add(const IsoClass& c, const mpq_class& x) {
    if (sgn(x) == 0) return;
    auto [it, inserted] = terms_.try_emplace(c, x);
    if (!inserted) {
        it->second += x;
        if (sgn(it->second) == 0) terms_.erase(it);
    }
}

void HallElement::add_scaled(const HallElement& o, const mpq_class& x) {
    if (sgn(x) == 0) return;
    for (const auto& [c, y] : o.terms_) add(c, y * x);
}

HallElement operator*(HallElement a, const mpq_class& x) {
    HallElement out;
    out.add_scaled(a, x);
    return out;
}

mpq_class HallElement::coeff(const IsoClass& c) const {
    auto it = terms_.find(c);
    return it == terms_.end() ? mpq_class(0) : it->second;
}

const char* twist_name(Twist t) {
    switch (t) {
        case Twist::euler_left: return "euler(a,b)";
        case Twist::euler_right: return "euler(b,a)";
        case Twist::neg_euler_left: return "-euler(a,b)";
        case Twist::neg_euler_right: return "-euler(b,a)";
        case Twist::none: return "0";
    }
    return "?";
}

// ---------------------------------------------------------------- HallOracle

HallOracle::HallOracle(Quiver quiver, int q, uint64_t budget, Twist twist)
    : quiver_(std::move(quiver)), field_(std::make_shared<Fq>(q)), budget_(budget), twist_(twist) {}

int HallOracle::space_dim(const DimVec& dim) const {
    if (dim.size() != quiver_.size()) throw std::invalid_argument("dimension vector has wrong rank");
    int s = 0;
    for (const auto& a : quiver_.arrows()) s += dim[static_cast<size_t>(a.source)] * dim[static_cast<size_t>(a.target)];
    return s;
}

uint64_t HallOracle::point_count(const DimVec& dim) const {
    uint64_t n = 1;
    for (int k = space_dim(dim); k > 0; --k) n = sat_mul(n, static_cast<uint64_t>(q()));
    return n;
}

mpz_class HallOracle::group_order(const DimVec& dim) const {
    mpz_class out = 1;
    for (size_t i = 0; i < dim.size(); ++i) {
        const int n = dim[i];
        mpz_class qn;
        mpz_ui_pow_ui(qn.get_mpz_t(), static_cast<unsigned long>(q()), static_cast<unsigned long>(n));
        for (int k = 0; k < n; ++k) {
            mpz_class qk;
            mpz_ui_pow_ui(qk.get_mpz_t(), static_cast<unsigned long>(q()), static_cast<unsigned long>(k));
            out *= qn - qk;
        }
    }
    return out;
}

void HallOracle::check_budget(uint64_t n, const std::string& what) const {
    if (n > budget_)
        throw BudgetExceeded(what + " needs " + (n == std::numeric_limits<uint64_t>::max() ? std::string("more than 2^64") : std::to_string(n)) +
                             " steps, above the budget of " + std::to_string(budget_) + "; use smaller dimensions or raise --budget");
}

QuiverRep HallOracle::decode(const DimVec& dim, uint64_t index) const {
    QuiverRep x = QuiverRep::zero(quiver_, dim);
    const uint64_t qq = static_cast<uint64_t>(q());
    for (size_t m = x.mats.size(); m-- > 0;)
        for (size_t e = x.mats[m].a.size(); e-- > 0;) {
            x.mats[m].a[e] = static_cast<uint8_t>(index % qq);
            index /= qq;
        }
    return x;
}

uint64_t HallOracle::encode(const QuiverRep& x) const {
    uint64_t idx = 0;
    const uint64_t qq = static_cast<uint64_t>(q());
    for (const auto& m : x.mats)
        for (uint8_t e : m.a) idx = idx * qq + e;
    return idx;
}

const HallOracle::Classification& HallOracle::classification(const DimVec& dim) const {
    {
        std::lock_guard lock(mutex_);
        auto it = classes_.find(dim);
        if (it != classes_.end()) return *it->second;
    }
    if (dim.size() != quiver_.size() || !dim.is_dimvec()) throw std::invalid_argument("iso_classes: bad dimension vector");
    const uint64_t n = point_count(dim);
    check_budget(n, "orbit enumeration of " + dim.to_string() + " at q=" + std::to_string(q()));
    const Fq& k = *field_;
    std::vector<std::vector<std::pair<FqMatrix, FqMatrix>>> gens;
    for (size_t v = 0; v < dim.size(); ++v) gens.push_back(gl_generators(k, dim[v]));
    const auto& arrows = quiver_.arrows();

    auto cl = std::make_unique<Classification>();
    constexpr uint32_t unset = std::numeric_limits<uint32_t>::max();
    cl->class_of.assign(n, unset);
    std::deque<uint64_t> queue;
    for (uint64_t start = 0; start < n; ++start) {
        if (cl->class_of[start] != unset) continue;
        const auto id = static_cast<uint32_t>(cl->classes.size());
        cl->class_of[start] = id;
        queue.push_back(start);
        uint64_t size = 0;
        while (!queue.empty()) {
            const uint64_t y = queue.front();
            queue.pop_front();
            ++size;
            const QuiverRep x = decode(dim, y);
            for (size_t v = 0; v < dim.size(); ++v)
                for (const auto& [g, gi] : gens[v]) {
                    QuiverRep z = x;
                    for (size_t a = 0; a < arrows.size(); ++a) {
                        if (arrows[a].target == static_cast<int>(v)) z.mats[a] = mat_mul(k, g, z.mats[a]);
                        if (arrows[a].source == static_cast<int>(v)) z.mats[a] = mat_mul(k, z.mats[a], gi);
                    }
                    const uint64_t e = encode(z);
                    if (cl->class_of[e] == unset) {
                        cl->class_of[e] = id;
                        queue.push_back(e);
                    }
                }
        }
        QuiverRep rep = decode(dim, start);
        cl->classes.push_back(ClassInfo{IsoClass{dim, point_of(rep)}, rep, size});
    }
    std::lock_guard lock(mutex_);
    auto [it, inserted] = classes_.emplace(dim, std::move(cl));
    return *it->second;
}

const std::vector<ClassInfo>& HallOracle::iso_classes(const DimVec& dim) const { return classification(dim).classes; }

IsoClass HallOracle::classify(const QuiverRep& x) const {
    if (!(x.quiver == quiver_)) throw std::invalid_argument("classify: representation of a different quiver");
    x.validate();
    const auto& cl = classification(x.dim);
    return cl.classes[cl.class_of[encode(x)]].cls;
}

const QuiverRep& HallOracle::representative(const IsoClass& c) const {
    const auto& cls = iso_classes(c.dim);
    auto it = std::lower_bound(cls.begin(), cls.end(), c, [](const ClassInfo& a, const IsoClass& b) { return a.cls < b; });
    if (it == cls.end() || !(it->cls == c)) throw std::invalid_argument("representative: unknown iso class");
    return it->rep;
}

const HallOracle::Tally& HallOracle::tally(const IsoClass& mc, const DimVec& sub) const {
    auto key = std::make_pair(mc, sub);
    {
        std::lock_guard lock(mutex_);
        auto it = tallies_.find(key);
        if (it != tallies_.end()) return *it->second;
    }
    const QuiverRep& m = representative(mc);
    const Fq& k = *field_;
    const size_t n = quiver_.size();
    uint64_t work = 1;
    for (size_t v = 0; v < n; ++v) work = sat_mul(work, gaussian_count(m.dim[v], sub[v], q()));
    check_budget(work, "subspace enumeration in " + m.dim.to_string());
    std::vector<std::vector<Subspace>> spaces;
    for (size_t v = 0; v < n; ++v) spaces.push_back(enumerate_subspaces(k, m.dim[v], sub[v]));
    const DimVec quot = m.dim - sub;
    const auto& arrows = quiver_.arrows();

    auto out = std::make_unique<Tally>();
    std::vector<size_t> choice(n, 0);
    bool done = std::any_of(spaces.begin(), spaces.end(), [](const auto& s) { return s.empty(); });
    while (!done) {
        QuiverRep s = QuiverRep::zero(quiver_, sub), qr = QuiverRep::zero(quiver_, quot);
        bool closed = true;
        for (size_t a = 0; a < arrows.size() && closed; ++a) {
            const auto& us = spaces[static_cast<size_t>(arrows[a].source)][choice[static_cast<size_t>(arrows[a].source)]];
            const auto& ut = spaces[static_cast<size_t>(arrows[a].target)][choice[static_cast<size_t>(arrows[a].target)]];
            const FqMatrix& x = m.mats[a];
            for (int r = 0; r < us.rows.rows && closed; ++r) {
                std::vector<uint8_t> u(us.rows.a.begin() + static_cast<long>(r) * us.rows.cols,
                                       us.rows.a.begin() + static_cast<long>(r + 1) * us.rows.cols);
                const auto w = apply(k, x, u);
                const auto rest = reduce(k, w, ut);
                if (std::any_of(rest.begin(), rest.end(), [](uint8_t e) { return e != 0; })) {
                    closed = false;
                    break;
                }
                for (size_t p = 0; p < ut.pivots.size(); ++p) s.mats[a].at(static_cast<int>(p), r) = w[static_cast<size_t>(ut.pivots[p])];
            }
            if (!closed) break;
            const auto ns = complement(us.pivots, x.cols), nt = complement(ut.pivots, x.rows);
            for (size_t c = 0; c < ns.size(); ++c) {
                std::vector<uint8_t> e(static_cast<size_t>(x.cols), 0);
                e[static_cast<size_t>(ns[c])] = 1;
                const auto w = reduce(k, apply(k, x, e), ut);
                for (size_t r = 0; r < nt.size(); ++r) qr.mats[a].at(static_cast<int>(r), static_cast<int>(c)) = w[static_cast<size_t>(nt[r])];
            }
        }
        if (closed) ++(*out)[{classify(qr), classify(s)}];
        size_t v = 0;
        while (v < n && ++choice[v] == spaces[v].size()) choice[v++] = 0;
        done = v == n;
    }
    std::lock_guard lock(mutex_);
    auto [it, inserted] = tallies_.emplace(key, std::move(out));
    return *it->second;
}

uint64_t HallOracle::hall_number(const QuiverRep& m, const IsoClass& n, const IsoClass& l) const {
    if (n.dim.size() != quiver_.size() || l.dim.size() != quiver_.size() || !(n.dim + l.dim == m.dim))
        throw std::invalid_argument("hall_number: dim N + dim L must equal dim M");
    const auto& t = tally(classify(m), l.dim);
    auto it = t.find({n, l});
    return it == t.end() ? 0 : it->second;
}

HallElement HallOracle::unit() const {
    const DimVec z = DimVec::zero(quiver_.size());
    return HallElement(IsoClass{z, {}});
}

HallElement HallOracle::simple(int i) const {
    if (i < 0 || static_cast<size_t>(i) >= quiver_.size()) throw std::out_of_range("simple: vertex out of range");
    const DimVec d = DimVec::unit(quiver_.size(), i);
    return HallElement(classify(QuiverRep::zero(quiver_, d)));
}

int HallOracle::twist_exponent(const DimVec& a, const DimVec& b) const {
    switch (twist_) {
        case Twist::euler_left: return euler_form(a, b, quiver_);
        case Twist::euler_right: return euler_form(b, a, quiver_);
        case Twist::neg_euler_left: return -euler_form(a, b, quiver_);
        case Twist::neg_euler_right: return -euler_form(b, a, quiver_);
        case Twist::none: return 0;
    }
    return 0;
}

mpq_class HallOracle::v_power(int e) const {
    mpz_class base = q();
    int half = e / 2;
    if (e % 2 != 0) {
        mpz_class s = sqrt(base);
        if (s * s != base)
            throw std::domain_error("odd twist exponent needs a square field size (v = sqrt(q)); use q = 4");
        base = s;
        half = e;
    }
    mpz_class p;
    mpz_pow_ui(p.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(std::abs(half)));
    return half >= 0 ? mpq_class(p) : mpq_class(mpz_class(1), p);
}

HallElement HallOracle::hall_product(const HallElement& a, const HallElement& b) const {
    HallElement out;
    for (const auto& [ca, xa] : a)
        for (const auto& [cb, xb] : b) {
            const mpq_class scale = xa * xb * v_power(twist_exponent(ca.dim, cb.dim));
            for (const auto& m : iso_classes(ca.dim + cb.dim)) {
                const auto& t = tally(m.cls, cb.dim);
                auto it = t.find({ca, cb});
                if (it != t.end()) out.add(m.cls, scale * mpq_class(mpz_class(std::to_string(it->second))));
            }
        }
    return out;
}

HallElement HallOracle::monomial(const Word& w) const {
    HallElement out = unit();
    for (size_t p = 0; p < w.size(); ++p) out = hall_product(out, simple(w[p]));
    return out;
}

int HallOracle::stratum_index(const QuiverRep& x, int i) const {
    x.validate();
    if (i < 0 || static_cast<size_t>(i) >= x.quiver.size()) throw std::out_of_range("stratum_index: vertex out of range");
    const Fq& k = *field_;
    const int n = x.dim[static_cast<size_t>(i)];
    const auto& arrows = x.quiver.arrows();
    if (x.quiver.is_sink(i)) {
        int cols = 0;
        for (size_t a = 0; a < arrows.size(); ++a)
            if (arrows[a].target == i) cols += x.mats[a].cols;
        FqMatrix big(n, cols);
        int off = 0;
        for (size_t a = 0; a < arrows.size(); ++a) {
            if (arrows[a].target != i) continue;
            for (int r = 0; r < n; ++r)
                for (int c = 0; c < x.mats[a].cols; ++c) big.at(r, off + c) = x.mats[a].at(r, c);
            off += x.mats[a].cols;
        }
        return n - mat_rank(k, big);
    }
    if (x.quiver.is_source(i)) {
        int rows = 0;
        for (size_t a = 0; a < arrows.size(); ++a)
            if (arrows[a].source == i) rows += x.mats[a].rows;
        FqMatrix big(rows, n);
        int off = 0;
        for (size_t a = 0; a < arrows.size(); ++a) {
            if (arrows[a].source != i) continue;
            for (int r = 0; r < x.mats[a].rows; ++r)
                for (int c = 0; c < n; ++c) big.at(off + r, c) = x.mats[a].at(r, c);
            off += x.mats[a].rows;
        }
        return n - mat_rank(k, big);
    }
    throw std::invalid_argument("stratum_index: vertex " + std::to_string(i + 1) + " is neither a sink nor a source");
}

std::vector<uint64_t> HallOracle::stratum_counts(const DimVec& dim, int i) const {
    if (i < 0 || static_cast<size_t>(i) >= quiver_.size()) throw std::out_of_range("stratum_counts: vertex out of range");
    if (!quiver_.is_sink(i) && !quiver_.is_source(i))
        throw std::invalid_argument("stratum_counts: vertex " + std::to_string(i + 1) + " is neither a sink nor a source");
    const uint64_t n = point_count(dim);
    check_budget(n, "stratum enumeration of " + dim.to_string() + " at q=" + std::to_string(q()));
    std::vector<uint64_t> out(static_cast<size_t>(dim[static_cast<size_t>(i)]) + 1, 0);
    for (uint64_t p = 0; p < n; ++p) ++out[static_cast<size_t>(stratum_index(decode(dim, p), i))];
    return out;
}

std::string HallOracle::class_name(const IsoClass& c) const {
    std::string s = "u" + c.dim.to_string() + "[";
    for (size_t k = 0; k < c.point.size(); ++k) {
        static const char* hex = "0123456789abcdef";
        if (q() > 16) s += hex[c.point[k] >> 4];
        s += hex[c.point[k] & 15];
    }
    return s + "]";
}

std::string HallOracle::to_string(const HallElement& x) const {
    std::vector<std::string> terms;
    for (const auto& [c, a] : x) terms.push_back(format_term(RatFunc::rational(a), class_name(c)));
    return join_terms(terms);
}

// ---------------------------------------------------------------- BGP reflection

QuiverRep bgp_reflect(const Fq& k, int i, const QuiverRep& x) {
    x.validate();
    const auto& arrows = x.quiver.arrows();
    if (i < 0 || static_cast<size_t>(i) >= x.quiver.size()) throw std::out_of_range("bgp_reflect: vertex out of range");
    const int n = x.dim[static_cast<size_t>(i)];
    QuiverRep out;
    out.quiver = x.quiver.sigma(i);
    out.dim = x.dim;
    out.mats = x.mats;
    std::vector<size_t> incident;
    for (size_t a = 0; a < arrows.size(); ++a)
        if (arrows[a].source == i || arrows[a].target == i) incident.push_back(a);
    if (x.quiver.is_sink(i)) {
        int cols = 0;
        for (size_t a : incident) cols += x.mats[a].cols;
        FqMatrix big(n, cols);
        int off = 0;
        for (size_t a : incident) {
            for (int r = 0; r < n; ++r)
                for (int c = 0; c < x.mats[a].cols; ++c) big.at(r, off + c) = x.mats[a].at(r, c);
            off += x.mats[a].cols;
        }
        if (mat_rank(k, big) != n) throw std::invalid_argument("bgp_reflect: representation is not in stratum 0 at the sink");
        const FqMatrix ker = mat_kernel(k, big);
        out.dim[static_cast<size_t>(i)] = ker.cols;
        off = 0;
        for (size_t a : incident) {
            FqMatrix m(x.mats[a].cols, ker.cols);
            for (int r = 0; r < m.rows; ++r)
                for (int c = 0; c < m.cols; ++c) m.at(r, c) = ker.at(off + r, c);
            out.mats[a] = m;
            off += x.mats[a].cols;
        }
        return out;
    }
    if (x.quiver.is_source(i)) {
        int rows = 0;
        for (size_t a : incident) rows += x.mats[a].rows;
        // Rows of `img` span the image of the stacked map.
        FqMatrix img(n, rows);
        int off = 0;
        for (size_t a : incident) {
            for (int r = 0; r < x.mats[a].rows; ++r)
                for (int c = 0; c < n; ++c) img.at(c, off + r) = x.mats[a].at(r, c);
            off += x.mats[a].rows;
        }
        auto piv = mat_rref(k, img);
        if (static_cast<int>(piv.size()) != n) throw std::invalid_argument("bgp_reflect: representation is not in stratum 0 at the source");
        Subspace im{img, piv};
        const auto keep = complement(piv, rows);
        out.dim[static_cast<size_t>(i)] = static_cast<int>(keep.size());
        off = 0;
        for (size_t a : incident) {
            FqMatrix m(static_cast<int>(keep.size()), x.mats[a].rows);
            for (int c = 0; c < m.cols; ++c) {
                std::vector<uint8_t> e(static_cast<size_t>(rows), 0);
                e[static_cast<size_t>(off + c)] = 1;
                const auto w = reduce(k, e, im);
                for (size_t r = 0; r < keep.size(); ++r) m.at(static_cast<int>(r), c) = w[static_cast<size_t>(keep[r])];
            }
            out.mats[a] = m;
            off += x.mats[a].rows;
        }
        return out;
    }
    throw std::invalid_argument("bgp_reflect: vertex " + std::to_string(i + 1) + " is neither a sink nor a source");
}

BgpReport bgp_bijection_check(const HallOracle& src, const HallOracle& dst, int i, const DimVec& nu) {
    if (!(dst.quiver() == src.quiver().sigma(i)) || dst.q() != src.q())
        throw std::invalid_argument("bgp_bijection_check: target must be the reflected quiver over the same field");
    BgpReport rep;
    rep.source_dim = nu;
    rep.target_dim = CartanDatum::load(src.quiver()).reflect(i, nu);
    std::vector<IsoClass> from;
    for (const auto& c : src.iso_classes(nu))
        if (src.stratum_index(c.rep, i) == 0) from.push_back(c.cls);
    rep.stratum0_source = from.size();
    if (!rep.target_dim.is_dimvec()) {
        rep.injective = rep.surjective = rep.round_trip = from.empty();
        return rep;
    }
    std::set<IsoClass> to;
    for (const auto& c : dst.iso_classes(rep.target_dim))
        if (dst.stratum_index(c.rep, i) == 0) to.insert(c.cls);
    rep.stratum0_target = to.size();
    std::set<IsoClass> images;
    rep.round_trip = true;
    for (const auto& c : from) {
        const QuiverRep y = bgp_reflect(src.field(), i, src.representative(c));
        images.insert(dst.classify(y));
        if (!(src.classify(bgp_reflect(dst.field(), i, y)) == c)) rep.round_trip = false;
    }
    rep.injective = images.size() == from.size();
    rep.surjective = images == to;
    return rep;
}

// ---------------------------------------------------------------- calibration and comparison

HallElement hall_serre(const HallOracle& h, const CartanDatum& d, int i, int j) {
    const int n = 1 - d.a(static_cast<size_t>(i), static_cast<size_t>(j));
    const mpq_class v = h.v_power(1);
    HallElement ui = h.simple(i), uj = h.simple(j), out;
    std::vector<HallElement> pw{h.unit()};
    for (int k = 1; k <= n; ++k) pw.push_back(h.hall_product(pw.back(), ui));
    for (int k = 0; k <= n; ++k) {
        const mpq_class c = qbinom(n, k).eval(v) * (k % 2 ? -1 : 1);
        out.add_scaled(h.hall_product(h.hall_product(pw[static_cast<size_t>(k)], uj), pw[static_cast<size_t>(n - k)]), c);
    }
    return out;
}

TwistCalibration calibrate_twist(const Quiver& q, int field_size) {
    TwistCalibration cal;
    const CartanDatum d = CartanDatum::load(q);
    bool found = false;
    for (Twist t : {Twist::euler_left, Twist::euler_right, Twist::neg_euler_left, Twist::neg_euler_right, Twist::none}) {
        HallOracle h(q, field_size, default_budget(), t);
        bool pass = true;
        for (int i = 0; i < static_cast<int>(q.size()) && pass; ++i)
            for (int j = 0; j < static_cast<int>(q.size()) && pass; ++j)
                if (i != j && !hall_serre(h, d, i, j).is_zero()) pass = false;
        cal.candidates.emplace_back(t, pass);
        if (pass && !found) {
            cal.chosen = t;
            found = true;
        }
    }
    return cal;
}

CompareReport specialize_compare(const HallOracle& h, const FAlgebra& f, const DimVec& a, const DimVec& b) {
    if (!f.datum().same_cartan(CartanDatum::load(h.quiver())))
        throw std::invalid_argument("specialize_compare: f and the quiver have different Cartan data");
    CompareReport rep{a, b, {}, 0, true};
    const mpq_class v = h.v_power(1);
    const auto wa = f.weight_basis(a), wb = f.weight_basis(b), wc = f.weight_basis(a + b);
    const auto& classes = h.iso_classes(a + b);
    std::vector<HallElement> basis;
    for (size_t s = 0; s < wc->dim(); ++s) basis.push_back(h.monomial(wc->basis_word(s)));
    std::vector<HallElement> left, right;
    for (size_t s = 0; s < wa->dim(); ++s) left.push_back(h.monomial(wa->basis_word(s)));
    for (size_t s = 0; s < wb->dim(); ++s) right.push_back(h.monomial(wb->basis_word(s)));

    for (size_t x = 0; x < wa->dim(); ++x)
        for (size_t y = 0; y < wb->dim(); ++y) {
            const HallElement target = h.hall_product(left[x], right[y]);
            const size_t nb = basis.size();
            Matrix<mpq_class> m(classes.size(), std::vector<mpq_class>(nb + 1));
            for (size_t r = 0; r < classes.size(); ++r) {
                for (size_t s = 0; s < nb; ++s) m[r][s] = basis[s].coeff(classes[r].cls);
                m[r][nb] = target.coeff(classes[r].cls);
            }
            const auto piv = rref(m);
            const bool solvable = piv.size() == nb && (nb == 0 || piv.back() < nb);
            if (!solvable) rep.spanning = false;
            const FElement prod = f.f_mul(FElement(wa->basis_word(x)), FElement(wb->basis_word(y)));
            for (size_t s = 0; s < nb; ++s) {
                CompareEntry e{wa->basis_word(x), wb->basis_word(y), wc->basis_word(s), solvable ? m[s][nb] : mpq_class(0),
                               prod.coeff(wc->basis_word(s)).eval(v), false};
                e.match = solvable && e.hall == e.falg;
                if (!e.match) ++rep.mismatches;
                rep.entries.push_back(std::move(e));
            }
        }
    return rep;
}

}  // namespace qgroup
