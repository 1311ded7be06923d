#include "qgroup/falg.hpp"

#include <stdexcept>

namespace qgroup {

namespace {

uint64_t splitmix(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Lexicographically greedy row basis of a matrix over Z/p.
std::vector<size_t> greedy_rows(const Matrix<ModP>& g) {
    std::vector<std::vector<ModP>> reduced;
    std::vector<size_t> pivot_col, chosen;
    for (size_t r = 0; r < g.size(); ++r) {
        std::vector<ModP> row = g[r];
        for (size_t k = 0; k < reduced.size(); ++k) {
            ModP f = row[pivot_col[k]];
            if (f.x == 0) continue;
            for (size_t j = 0; j < row.size(); ++j) row[j] -= f * reduced[k][j];
        }
        size_t p = 0;
        while (p < row.size() && row[p].x == 0) ++p;
        if (p == row.size()) continue;
        ModP inv = row[p].inverse();
        for (auto& x : row) x *= inv;
        reduced.push_back(std::move(row));
        pivot_col.push_back(p);
        chosen.push_back(r);
    }
    return chosen;
}

}  // namespace

FAlgebra::FAlgebra(CartanDatum d, RatFunc generator_constant)
    : form_(std::move(d)), c_(std::move(generator_constant)) {}

void FAlgebra::check_vertex(int i) const {
    if (i < 0 || static_cast<size_t>(i) >= rank())
        throw std::out_of_range("vertex index " + std::to_string(i + 1) + " out of range");
}

std::shared_ptr<const WeightBasis> FAlgebra::weight_basis(const DimVec& nu) const {
    if (nu.size() != rank() || !nu.is_dimvec()) throw std::invalid_argument("weight_basis: bad weight " + nu.to_string());
    {
        std::lock_guard lock(mutex_);
        auto it = bases_.find(nu);
        if (it != bases_.end()) return it->second;
    }
    auto b = build(nu);
    std::lock_guard lock(mutex_);
    return bases_.emplace(nu, b).first->second;
}

std::shared_ptr<const WeightBasis> FAlgebra::build(const DimVec& nu) const {
    auto wb = std::make_shared<WeightBasis>();
    wb->weight = nu;
    wb->words = Word::all_of_weight(nu);
    const size_t n = wb->words.size();
    for (size_t k = 0; k < n; ++k) wb->index.emplace(wb->words[k], k);

    Matrix<IntPoly> g(n, std::vector<IntPoly>(n));
    for (size_t a = 0; a < n; ++a)
        for (size_t b = 0; b < n; ++b) g[a][b] = form_.normalized(wb->words[a], wb->words[b]);

    for (uint64_t attempt = 0; attempt < 16; ++attempt) {
        ModP point(splitmix(attempt * 7919 + 17) % (ModP::P - 2) + 2);
        Matrix<ModP> gm(n, std::vector<ModP>(n));
        for (size_t a = 0; a < n; ++a)
            for (size_t b = 0; b < n; ++b) gm[a][b] = eval_mod(g[a][b], point);
        std::vector<size_t> sel = greedy_rows(gm);
        const size_t r = sel.size();

        Matrix<IntPoly> A(r, std::vector<IntPoly>(r)), B(r, std::vector<IntPoly>(n));
        for (size_t s = 0; s < r; ++s) {
            for (size_t t = 0; t < r; ++t) A[s][t] = g[sel[s]][sel[t]];
            B[s] = g[sel[s]];
        }
        BareissResult br = bareiss_solve(A, B);

        // Certify: every row of the Gram matrix is the combination given by
        // the projection (so rank == r), and no skipped word needs a later
        // basis word (so the selection is the lexicographically greedy one).
        // Rows and columns in the selection hold by construction, and the
        // remaining block is symmetric.
        std::vector<bool> in_sel(n, false);
        for (size_t s : sel) in_sel[s] = true;
        bool ok = true;
        for (size_t w = 0; w < n && ok; ++w) {
            for (size_t s = 0; s < r && ok; ++s)
                if (sel[s] > w && !br.numer[s][w].is_zero()) ok = false;
            if (in_sel[w]) continue;
            for (size_t j = w; j < n && ok; ++j) {
                if (in_sel[j]) continue;
                IntPoly lhs = g[w][j] * br.det;
                IntPoly rhs;
                for (size_t s = 0; s < r; ++s)
                    if (!br.numer[s][w].is_zero() && !g[sel[s]][j].is_zero()) rhs += br.numer[s][w] * g[sel[s]][j];
                if (lhs != rhs) ok = false;
            }
        }
        if (!ok) continue;

        wb->selected = sel;
        wb->gram = std::move(A);
        wb->proj.assign(n, std::vector<RatFunc>(r));
        for (size_t w = 0; w < n; ++w)
            for (size_t s = 0; s < r; ++s)
                if (!br.numer[s][w].is_zero()) wb->proj[w][s] = RatFunc::make(br.numer[s][w], br.det);
        return wb;
    }
    throw std::runtime_error("weight_basis: could not certify a basis for " + nu.to_string());
}

FElement FAlgebra::normal_form(const Word& w) const {
    for (size_t k = 0; k < w.size(); ++k) check_vertex(w[k]);
    auto wb = weight_basis(w.weight(rank()));
    const auto& row = wb->proj[wb->index.at(w)];
    FElement out;
    for (size_t s = 0; s < row.size(); ++s) out.add(wb->basis_word(s), row[s]);
    return out;
}

FElement FAlgebra::normal_form(const FreeElement& x) const {
    FElement out;
    for (const auto& [w, c] : x) out.add_scaled(normal_form(w), c);
    return out;
}

FElement FAlgebra::f_mul(const FElement& x, const FElement& y) const {
    FElement out;
    for (const auto& [a, ca] : x)
        for (const auto& [b, cb] : y) out.add_scaled(normal_form(a.concat(b)), ca * cb);
    return out;
}

FElement FAlgebra::theta_divided(int i, int n) const {
    check_vertex(i);
    if (n < 0) throw std::domain_error("theta_divided: negative power");
    return normal_form(Word(std::vector<int>(static_cast<size_t>(n), i))) * qfact(n).inverse();
}

RatFunc FAlgebra::form(const FElement& x, const FElement& y) const {
    RatFunc acc;
    for (const auto& [a, ca] : x)
        for (const auto& [b, cb] : y) {
            RatFunc f = form_.form(a, b, c_);
            if (!f.is_zero()) acc += ca * cb * f;
        }
    return acc;
}

std::vector<RatFunc> FAlgebra::coordinates(const FElement& x, const DimVec& nu) const {
    auto wb = weight_basis(nu);
    std::vector<RatFunc> out(wb->dim());
    for (size_t s = 0; s < wb->dim(); ++s) out[s] = x.coeff(wb->basis_word(s));
    return out;
}

FElement FAlgebra::from_coordinates(const DimVec& nu, const std::vector<RatFunc>& c) const {
    auto wb = weight_basis(nu);
    FElement out;
    for (size_t s = 0; s < wb->dim() && s < c.size(); ++s) out.add(wb->basis_word(s), c[s]);
    return out;
}

FElement FAlgebra::i_r_component(int i, Side side, const FElement& x) const {
    check_vertex(i);
    const CartanDatum& d = datum();
    FreeElement acc;
    for (const auto& [w, c] : x) {
        const size_t len = w.size();
        for (size_t k = 0; k < len; ++k) {
            if (w[k] != i) continue;
            int e = 0;
            if (side == Side::left) {
                for (size_t l = 0; l < k; ++l) e += d.a(static_cast<size_t>(w[l]), static_cast<size_t>(i));
            } else {
                for (size_t l = k + 1; l < len; ++l) e += d.a(static_cast<size_t>(i), static_cast<size_t>(w[l]));
            }
            acc.add(w.erase(k), c * RatFunc::v_pow(e));
        }
    }
    return normal_form(acc);
}

std::vector<FElement> FAlgebra::sub_if_basis(int i, const DimVec& nu, Side side) const {
    check_vertex(i);
    auto key = std::make_tuple(i, nu, side == Side::left ? 0 : 1);
    {
        std::lock_guard lock(mutex_);
        auto it = kernels_.find(key);
        if (it != kernels_.end()) return it->second;
    }
    std::vector<FElement> out;
    auto wb = weight_basis(nu);
    const size_t n = wb->dim();
    if (nu[static_cast<size_t>(i)] == 0) {
        for (size_t s = 0; s < n; ++s) out.emplace_back(wb->basis_word(s));
    } else {
        const DimVec lower = nu - DimVec::unit(rank(), i);
        const size_t m = dim(lower);
        Matrix<RatFunc> M(m, std::vector<RatFunc>(n));
        for (size_t s = 0; s < n; ++s) {
            auto col = coordinates(i_r_component(i, side, FElement(wb->basis_word(s))), lower);
            for (size_t k = 0; k < m; ++k) M[k][s] = col[k];
        }
        for (auto& vec : kernel(M, n)) {
            size_t first = 0;
            while (vec[first].is_zero()) ++first;
            RatFunc inv = vec[first].inverse();
            for (auto& c : vec) c *= inv;
            out.push_back(from_coordinates(nu, vec));
        }
    }
    std::lock_guard lock(mutex_);
    kernels_.emplace(key, out);
    return out;
}

std::vector<std::pair<int, FElement>> FAlgebra::i_decompose(int i, const FElement& x, Side side) const {
    check_vertex(i);
    if (x.is_zero()) return {};
    const DimVec nu = weight_of(x, rank());
    const int top = nu[static_cast<size_t>(i)];
    const size_t n = dim(nu);

    struct Column {
        int t;
        FElement k;
    };
    std::vector<Column> cols;
    Matrix<RatFunc> M(n);
    for (int t = 0; t <= top; ++t) {
        const DimVec sub = nu - t * DimVec::unit(rank(), i);
        const FElement th = theta_divided(i, t);
        for (const auto& k : sub_if_basis(i, sub, side)) {
            FElement img = side == Side::left ? f_mul(th, k) : f_mul(k, th);
            auto c = coordinates(img, nu);
            for (size_t r = 0; r < n; ++r) M[r].push_back(c[r]);
            cols.push_back({t, k});
        }
    }
    if (cols.size() != n) throw std::logic_error("i_decompose: dimension mismatch in decomposition");
    auto sol = solve(M, coordinates(x, nu));
    if (!sol) throw std::logic_error("i_decompose: singular decomposition system");

    std::map<int, FElement> parts;
    for (size_t c = 0; c < cols.size(); ++c)
        if (!(*sol)[c].is_zero()) parts[cols[c].t].add_scaled(cols[c].k, (*sol)[c]);
    std::vector<std::pair<int, FElement>> out;
    for (auto& [t, p] : parts)
        if (!p.is_zero()) out.emplace_back(t, std::move(p));
    return out;
}

bool FAlgebra::dim_decomposition_check(int i, const DimVec& nu) const {
    check_vertex(i);
    size_t total = 0;
    for (int t = 0; t <= nu[static_cast<size_t>(i)]; ++t)
        total += sub_if_basis(i, nu - t * DimVec::unit(rank(), i), Side::left).size();
    return total == dim(nu);
}

DimVec weight_of(const FElement& x, size_t rank) {
    auto w = homogeneous_weight(x, rank);
    if (!w) throw std::invalid_argument("element is zero or not homogeneous");
    return *w;
}

}  // namespace qgroup
