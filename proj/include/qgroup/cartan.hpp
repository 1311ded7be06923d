#pragma once

#include <compare>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace qgroup {

/// An element of the root lattice ZI in the basis of simple roots. Used as a
/// dimension vector (nu in NI) whenever all entries are nonnegative;
/// reflections may leave NI, callers check with is_dimvec().
struct DimVec {
    std::vector<int> v;

    DimVec() = default;
    explicit DimVec(std::vector<int> entries) : v(std::move(entries)) {}
    static DimVec zero(size_t n) { return DimVec(std::vector<int>(n, 0)); }
    static DimVec unit(size_t n, int i);

    size_t size() const { return v.size(); }
    int operator[](size_t i) const { return v[i]; }
    int& operator[](size_t i) { return v[i]; }
    int total() const;
    bool is_zero() const;
    bool is_dimvec() const;

    DimVec& operator+=(const DimVec& o);
    DimVec& operator-=(const DimVec& o);
    friend DimVec operator+(DimVec a, const DimVec& b) { return a += b; }
    friend DimVec operator-(DimVec a, const DimVec& b) { return a -= b; }
    friend DimVec operator*(int k, DimVec a) {
        for (auto& x : a.v) x *= k;
        return a;
    }
    friend auto operator<=>(const DimVec&, const DimVec&) = default;

    /// "(1,2,0)"
    std::string to_string() const;
    /// Accepts "1,2,0" or "(1,2,0)".
    static DimVec parse(std::string_view text);
};

/// An element of the coweight lattice P^vee = Z Pi^vee in the basis h_i.
struct Coweight {
    std::vector<int> v;

    Coweight() = default;
    explicit Coweight(std::vector<int> entries) : v(std::move(entries)) {}
    static Coweight zero(size_t n) { return Coweight(std::vector<int>(n, 0)); }
    static Coweight h(size_t n, int i);
    /// sum_j nu_j h_j
    static Coweight from_root(const DimVec& nu) { return Coweight(nu.v); }

    size_t size() const { return v.size(); }
    int operator[](size_t i) const { return v[i]; }
    int& operator[](size_t i) { return v[i]; }
    bool is_zero() const;

    Coweight operator-() const;
    Coweight& operator+=(const Coweight& o);
    Coweight& operator-=(const Coweight& o);
    friend Coweight operator+(Coweight a, const Coweight& b) { return a += b; }
    friend Coweight operator-(Coweight a, const Coweight& b) { return a -= b; }
    friend Coweight operator*(int k, Coweight a) {
        for (auto& x : a.v) x *= k;
        return a;
    }
    friend auto operator<=>(const Coweight&, const Coweight&) = default;

    std::string to_string() const;
};

struct Arrow {
    int source;
    int target;
    friend auto operator<=>(const Arrow&, const Arrow&) = default;
};

/// A finite quiver without loops. Vertices are indexed 0..n-1 in input order
/// and carry display labels; parallel arrows are allowed.
class Quiver {
public:
    Quiver() = default;
    /// Throws std::invalid_argument on loops, duplicate labels or dangling arrows.
    Quiver(std::vector<std::string> labels, std::vector<Arrow> arrows);

    /// "1->2,2->3". Vertices are ordered numerically when every label is an
    /// integer, else by first appearance. A bare label declares an isolated vertex.
    static Quiver parse_shorthand(std::string_view text);
    /// {"vertices":[...], "arrows":[[s,t],...]} with s,t vertex labels.
    static Quiver from_json(std::string_view text);
    std::string to_json() const;
    std::string to_shorthand() const;

    size_t size() const { return labels_.size(); }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::vector<Arrow>& arrows() const { return arrows_; }
    int index_of(std::string_view label) const;

    bool is_sink(int i) const;
    bool is_source(int i) const;

    /// Reverse every arrow incident to vertex i.
    Quiver sigma(int i) const;
    /// Reverse the arrows whose positions are listed.
    Quiver sigma_arrows(const std::vector<size_t>& arrow_positions) const;
    /// Every orientation of the underlying graph (2^|arrows| quivers, arrow order kept).
    std::vector<Quiver> all_orientations() const;

    friend bool operator==(const Quiver&, const Quiver&) = default;

private:
    std::vector<std::string> labels_;
    std::vector<Arrow> arrows_;
};

/// Euler form <a,b> = sum_i a_i b_i - sum_{arrows s->t} a_s b_t.
int euler_form(const DimVec& a, const DimVec& b, const Quiver& q);

/// The symmetric Cartan datum of a quiver: a_ii = 2 and a_ij = -(#{i->j} + #{j->i}).
class CartanDatum {
public:
    CartanDatum() = default;
    static CartanDatum load(const Quiver& q);
    /// Cartan type A_n on the linear quiver 1->2->...->n.
    static CartanDatum type_a(size_t n);

    const Quiver& quiver() const { return quiver_; }
    size_t rank() const { return quiver_.size(); }
    int a(size_t i, size_t j) const { return cartan_[i * rank() + j]; }

    /// (x, y) = sum x_i a_ij y_j
    int sym_form(const DimVec& x, const DimVec& y) const;
    /// (e_i, y)
    int sym_form_unit(int i, const DimVec& y) const;
    /// alpha_i(mu) = sum_j mu_j a_ji
    int alpha(int i, const Coweight& mu) const;
    /// nu(mu) = sum_i nu_i alpha_i(mu)
    int alpha(const DimVec& nu, const Coweight& mu) const;

    /// s_i(nu) = nu - (sum_j a_ij nu_j) e_i
    DimVec reflect(int i, const DimVec& nu) const;
    /// s_i(mu) = mu - alpha_i(mu) h_i
    Coweight reflect(int i, const Coweight& mu) const;

    /// Cartan matrices are equal (orientation-independent comparison).
    bool same_cartan(const CartanDatum& o) const { return cartan_ == o.cartan_; }

    std::vector<std::vector<int>> matrix() const;

private:
    Quiver quiver_;
    std::vector<int> cartan_;
};

}  // namespace qgroup
