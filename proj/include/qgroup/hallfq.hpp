#pragma once

#include "qgroup/falg.hpp"

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

namespace qgroup {

/// Thrown when an exhaustive enumeration would exceed the configured ceiling.
class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// QGROUP_BUDGET if set, else 10^7.
uint64_t default_budget();

/// The field with q = p^d <= 256 elements. Elements are 0..q-1, read as
/// polynomials in a fixed root of an irreducible polynomial with base-p digits
/// as coefficients (so 0 and 1 are the usual ones).
class Fq {
public:
    explicit Fq(int q);

    int size() const { return q_; }
    int characteristic() const { return p_; }
    int degree() const { return d_; }
    /// Coefficients of the monic defining polynomial, constant term first.
    const std::vector<int>& modulus() const { return modulus_; }
    int primitive() const { return exp_[q_ > 2 ? 1 : 0]; }

    int add(int a, int b) const { return add_[a * q_ + b]; }
    int sub(int a, int b) const { return add_[a * q_ + neg_[b]]; }
    int neg(int a) const { return neg_[a]; }
    int mul(int a, int b) const {
        if (a == 0 || b == 0) return 0;
        return exp_[(log_[a] + log_[b]) % (q_ - 1)];
    }
    int inv(int a) const;
    int log(int a) const;
    int exp(int k) const { return exp_[((k % (q_ - 1)) + (q_ - 1)) % (q_ - 1)]; }
    /// 1, x, ..., x^(d-1): an additive basis over the prime field.
    std::vector<int> additive_basis() const;

private:
    int q_, p_, d_;
    std::vector<int> modulus_;
    std::vector<uint8_t> add_, neg_;
    std::vector<int> exp_, log_;
};

/// Dense matrix over F_q, row-major.
struct FqMatrix {
    int rows = 0, cols = 0;
    std::vector<uint8_t> a;

    FqMatrix() = default;
    FqMatrix(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, 0) {}
    static FqMatrix identity(int n);
    uint8_t& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    uint8_t at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }
    friend bool operator==(const FqMatrix&, const FqMatrix&) = default;
    friend auto operator<=>(const FqMatrix&, const FqMatrix&) = default;
};

FqMatrix mat_mul(const Fq& k, const FqMatrix& x, const FqMatrix& y);
/// Reduced row echelon form in place; returns the pivot columns.
std::vector<int> mat_rref(const Fq& k, FqMatrix& m);
int mat_rank(const Fq& k, FqMatrix m);
FqMatrix mat_inverse(const Fq& k, const FqMatrix& m);
/// Columns form a basis of the null space.
FqMatrix mat_kernel(const Fq& k, const FqMatrix& m);

/// A representation: one dim(V_t) x dim(V_s) matrix per arrow s->t.
struct QuiverRep {
    Quiver quiver;
    DimVec dim;
    std::vector<FqMatrix> mats;

    static QuiverRep zero(const Quiver& q, const DimVec& dim);
    /// Throws std::invalid_argument if a matrix shape does not match.
    void validate() const;
};

/// Iso class of a representation, named by its lexicographically least point
/// (the entries of all arrow matrices, arrow by arrow, row-major).
struct IsoClass {
    DimVec dim;
    std::vector<uint8_t> point;
    friend auto operator<=>(const IsoClass&, const IsoClass&) = default;
    friend bool operator==(const IsoClass&, const IsoClass&) = default;
};

struct ClassInfo {
    IsoClass cls;
    QuiverRep rep;
    uint64_t orbit_size = 0;
};

/// A function on iso classes (u_M is the indicator of the class M).
class HallElement {
public:
    HallElement() = default;
    HallElement(const IsoClass& c, mpq_class x = 1) { add(c, std::move(x)); }  // NOLINT

    void add(const IsoClass& c, const mpq_class& x);
    void add_scaled(const HallElement& o, const mpq_class& x);
    HallElement& operator+=(const HallElement& o) { return add_scaled(o, 1), *this; }
    HallElement& operator-=(const HallElement& o) { return add_scaled(o, -1), *this; }
    friend HallElement operator+(HallElement a, const HallElement& b) { return a += b; }
    friend HallElement operator-(HallElement a, const HallElement& b) { return a -= b; }
    friend HallElement operator*(HallElement a, const mpq_class& x);

    mpq_class coeff(const IsoClass& c) const;
    bool is_zero() const { return terms_.empty(); }
    const std::map<IsoClass, mpq_class>& terms() const { return terms_; }
    auto begin() const { return terms_.begin(); }
    auto end() const { return terms_.end(); }
    friend bool operator==(const HallElement&, const HallElement&) = default;

private:
    std::map<IsoClass, mpq_class> terms_;
};

/// Exponent convention for the twist of the Hall product.
enum class Twist { euler_left, euler_right, neg_euler_left, neg_euler_right, none };

const char* twist_name(Twist t);
/// The convention used by every comparison; see calibrate_twist.
inline constexpr Twist kFrozenTwist = Twist::euler_left;

/// Representations of a quiver over F_q: orbit enumeration, Hall numbers,
/// the twisted Hall product and the sink/source strata.
class HallOracle {
public:
    HallOracle(Quiver quiver, int q, uint64_t budget = default_budget(), Twist twist = kFrozenTwist);

    const Quiver& quiver() const { return quiver_; }
    const Fq& field() const { return *field_; }
    int q() const { return field_->size(); }
    uint64_t budget() const { return budget_; }
    Twist twist() const { return twist_; }

    /// sum over arrows of dim V_t * dim V_s
    int space_dim(const DimVec& dim) const;
    /// q^dim E_V, saturating at UINT64_MAX.
    uint64_t point_count(const DimVec& dim) const;
    /// |G_V(F_q)|
    mpz_class group_order(const DimVec& dim) const;

    QuiverRep decode(const DimVec& dim, uint64_t index) const;
    uint64_t encode(const QuiverRep& x) const;

    /// Orbit representatives in increasing order of their points.
    const std::vector<ClassInfo>& iso_classes(const DimVec& dim) const;
    IsoClass classify(const QuiverRep& x) const;
    const QuiverRep& representative(const IsoClass& c) const;

    /// #{subrepresentations U of M with U = L and M/U = N}
    uint64_t hall_number(const QuiverRep& m, const IsoClass& n, const IsoClass& l) const;

    HallElement unit() const;
    HallElement simple(int i) const;
    /// u_A o u_B = v^{e(dim A, dim B)} sum_M hall_number(M, A, B) u_M with v^2 = q.
    HallElement hall_product(const HallElement& a, const HallElement& b) const;
    /// v^e for v = sqrt(q). Throws std::domain_error if e is odd and q is not a square.
    mpq_class v_power(int e) const;
    int twist_exponent(const DimVec& a, const DimVec& b) const;
    /// u_{S_w1} o ... o u_{S_wk}
    HallElement monomial(const Word& w) const;

    /// Codimension of the total incoming image at a sink, or dimension of the
    /// total outgoing kernel at a source.
    int stratum_index(const QuiverRep& x, int i) const;
    /// counts[r] = #points in stratum r, r = 0..dim V_i.
    std::vector<uint64_t> stratum_counts(const DimVec& dim, int i) const;

    std::string to_string(const HallElement& x) const;
    std::string class_name(const IsoClass& c) const;

private:
    struct Classification {
        std::vector<ClassInfo> classes;
        std::vector<uint32_t> class_of;
    };
    const Classification& classification(const DimVec& dim) const;
    void check_budget(uint64_t n, const std::string& what) const;
    using Tally = std::map<std::pair<IsoClass, IsoClass>, uint64_t>;
    /// (quotient class, sub class) -> count over subrepresentations of dim sub
    const Tally& tally(const IsoClass& m, const DimVec& sub) const;

    Quiver quiver_;
    std::shared_ptr<const Fq> field_;
    uint64_t budget_;
    Twist twist_;
    mutable std::mutex mutex_;
    mutable std::map<DimVec, std::unique_ptr<Classification>> classes_;
    mutable std::map<std::pair<IsoClass, DimVec>, std::unique_ptr<Tally>> tallies_;
};

/// BGP reflection at a sink (kernel construction) or a source (cokernel
/// construction). The result lives on quiver().sigma(i). Throws
/// std::invalid_argument unless x lies in stratum 0 at i.
QuiverRep bgp_reflect(const Fq& k, int i, const QuiverRep& x);

struct BgpReport {
    DimVec source_dim, target_dim;
    size_t stratum0_source = 0;  // stratum-0 classes on Q
    size_t stratum0_target = 0;  // stratum-0 classes on sigma_i Q
    bool injective = false;
    bool surjective = false;
    bool round_trip = false;  // reflecting back returns the starting class
    bool ok() const { return injective && surjective && round_trip; }
};

/// Checks that bgp_reflect is a bijection between stratum-0 classes of dim nu
/// on src (i a sink or source) and stratum-0 classes of dim s_i nu on dst = sigma_i.
BgpReport bgp_bijection_check(const HallOracle& src, const HallOracle& dst, int i, const DimVec& nu);

struct TwistCalibration {
    std::vector<std::pair<Twist, bool>> candidates;  // convention, Serre relations vanish
    Twist chosen = kFrozenTwist;
};

/// Tries each twist convention against the quantum Serre relations between
/// adjacent simples and picks the first one that passes.
TwistCalibration calibrate_twist(const Quiver& q, int field_size = 4);

struct CompareEntry {
    Word x, y, z;
    mpq_class hall, falg;
    bool match = false;
};

struct CompareReport {
    DimVec a, b;
    std::vector<CompareEntry> entries;
    size_t mismatches = 0;
    bool spanning = true;  // Hall products lie in the span of the basis monomials
    bool ok() const { return spanning && mismatches == 0; }
};

/// Writes theta_x theta_y in f (x, y basis words of weights a, b) on the basis
/// of f_{a+b}, evaluates at v = sqrt(q), and compares with the coefficients
/// solved from the Hall product of the monomial functions.
CompareReport specialize_compare(const HallOracle& h, const FAlgebra& f, const DimVec& a, const DimVec& b);

/// Quantum Serre combination sum_k (-1)^k [n choose k] u_i^k u_j u_i^(n-k), n = 1 - a_ij.
HallElement hall_serre(const HallOracle& h, const CartanDatum& d, int i, int j);

}  // namespace qgroup
