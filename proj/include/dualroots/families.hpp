#ifndef DUALROOTS_FAMILIES_HPP
#define DUALROOTS_FAMILIES_HPP

#include "bipoly.hpp"

#include <atomic>
#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace dualroots {

enum class FamilyKind { Laguerre, Gegenbauer, GegenbauerModified, GegenbauerTilde, Charlier };

struct FamilyId {
    FamilyKind kind;
    int n;

    friend auto operator<=>(const FamilyId&, const FamilyId&) = default;
};

inline std::string_view family_name(FamilyKind k)
{
    switch (k) {
    case FamilyKind::Laguerre: return "laguerre";
    case FamilyKind::Gegenbauer: return "gegenbauer";
    case FamilyKind::GegenbauerModified: return "gegenbauer-modified";
    case FamilyKind::GegenbauerTilde: return "gegenbauer-tilde";
    case FamilyKind::Charlier: return "charlier";
    }
    return "?";
}

inline FamilyKind parse_family(std::string_view s)
{
    for (auto k : {FamilyKind::Laguerre, FamilyKind::Gegenbauer, FamilyKind::GegenbauerModified,
                   FamilyKind::GegenbauerTilde, FamilyKind::Charlier})
        if (family_name(k) == s)
            return k;
    throw std::invalid_argument("unknown family '" + std::string(s) + "'");
}

/// Degree cap for routine construction; larger n needs an explicit opt-in.
inline constexpr int kDefaultMaxDegree = 24;

namespace detail {

/// prod_{i=first}^{last} (z + offset + i); empty product is 1.
inline UniPoly shifted_product(int first, int last, const Rational& offset = 0)
{
    UniPoly p = UniPoly::constant(1, Var::Z);
    for (int i = first; i <= last; ++i)
        p = p * UniPoly({Rational(offset + i), Rational(1)}, Var::Z);
    return p;
}

inline void add_x_power(BiPoly& out, const UniPoly& z_coeff, int x_power, const Rational& scale)
{
    for (int j = 0; j <= z_coeff.degree(); ++j)
        out.add_term(x_power, j, z_coeff.coefficient(j) * scale);
}

inline Rational signed_unit(int k) { return k % 2 == 0 ? Rational(1) : Rational(-1); }

inline void check_degree(int n)
{
    if (n < 0)
        throw std::invalid_argument("family degree must be >= 0");
}

} // namespace detail

/// L_n(x, z) = sum_k (-1)^k prod_{j=k+1}^n (z+j) / (k!(n-k)!) x^k.
inline BiPoly build_laguerre(int n)
{
    detail::check_degree(n);
    BiPoly out;
    for (int k = 0; k <= n; ++k) {
        const Rational scale = detail::signed_unit(k) / Rational(factorial(k) * factorial(n - k));
        detail::add_x_power(out, detail::shifted_product(k + 1, n), k, scale);
    }
    return out;
}

/// G_n(x, z) = sum_k (-1)^k prod_{i=0}^{n-k-1} (z+i) / (k!(n-2k)!) (2x)^{n-2k}.
inline BiPoly build_gegenbauer(int n)
{
    detail::check_degree(n);
    BiPoly out;
    for (int k = 0; 2 * k <= n; ++k) {
        const Rational scale = detail::signed_unit(k) * Rational(pow_int(Integer(2), static_cast<unsigned long>(n - 2 * k)))
                               / Rational(factorial(k) * factorial(n - 2 * k));
        detail::add_x_power(out, detail::shifted_product(0, n - k - 1), n - 2 * k, scale);
    }
    return out;
}

/**
 * Equal-parameter Jacobi rescaling P_n^{(z-1/2, z-1/2)}:
 * sum_k (-1)^k prod_{i=n-h}^{n-k-1}(z+i) prod_{i=h}^{n-1}(z+1/2+i) / (k!(n-2k)!) x^{n-2k} 4^{-k},
 * with h = floor(n/2).
 */
inline BiPoly build_gegenbauer_modified(int n)
{
    detail::check_degree(n);
    const int h = n / 2;
    const UniPoly half_shift = detail::shifted_product(h, n - 1, make_rational(1, 2));
    BiPoly out;
    for (int k = 0; k <= h; ++k) {
        const Rational scale = detail::signed_unit(k)
                               / Rational(factorial(k) * factorial(n - 2 * k) * pow_int(Integer(4), static_cast<unsigned long>(k)));
        detail::add_x_power(out, detail::shifted_product(n - h, n - k - 1) * half_shift, n - 2 * k, scale);
    }
    return out;
}

/// G_n = prod_j (z - mu_j) * reduced, mu_j = -j for j < ceil(n/2).
struct TildeDecomposition {
    int n = 0;
    std::vector<Rational> constant_roots;
    BiPoly reduced;
    UniPoly leading_x_coeff; ///< (2x)^n / n!, the z^{floor(n/2)} coefficient of `reduced`

    UniPoly constant_factor() const { return UniPoly::from_roots(constant_roots, Var::Z); }
};

inline TildeDecomposition build_gegenbauer_tilde(int n)
{
    if (n < 1)
        throw std::invalid_argument("reduced Gegenbauer needs n >= 1");
    TildeDecomposition t;
    t.n = n;
    for (int j = 0; j < (n + 1) / 2; ++j)
        t.constant_roots.push_back(Rational(-j));
    auto [q, r] = build_gegenbauer(n).divmod_z(t.constant_factor());
    if (!r.is_zero())
        throw std::logic_error("G_" + std::to_string(n) + " is not divisible by its constant z-roots");
    t.reduced = std::move(q);
    t.leading_x_coeff = UniPoly::monomial(Rational(pow_int(Integer(2), static_cast<unsigned long>(n))) / Rational(factorial(n)), n, Var::X);
    return t;
}

/// hat G_n = scale * prod (z - extra_constant_roots) * tilde G_n.
struct ModifiedFactorRule {
    int n = 0;
    std::vector<Rational> extra_constant_roots; ///< -1/2 - i, i = floor(n/2) .. n-1
    Rational scale;                             ///< 2^{-n}

    UniPoly factor() const { return UniPoly::from_roots(extra_constant_roots, Var::Z) * scale; }
};

inline ModifiedFactorRule modified_factor_rule(int n)
{
    detail::check_degree(n);
    ModifiedFactorRule m;
    m.n = n;
    for (int i = n / 2; i <= n - 1; ++i)
        m.extra_constant_roots.push_back(make_rational(-1, 2) - i);
    m.scale = make_rational(Integer(1), pow_int(Integer(2), static_cast<unsigned long>(n)));
    return m;
}

/**
 * Memo table for family constructors: concurrent readers, first writer wins.
 * Returned polynomials are immutable and shared.
 */
class FamilyCache {
public:
    static FamilyCache& instance()
    {
        static FamilyCache cache;
        return cache;
    }

    std::shared_ptr<const BiPoly> get(FamilyId id)
    {
        {
            std::shared_lock lock(mutex_);
            if (auto it = table_.find(id); it != table_.end())
                return it->second;
        }
        auto built = std::make_shared<const BiPoly>(build(id));
        std::unique_lock lock(mutex_);
        return table_.try_emplace(id, std::move(built)).first->second;
    }

    std::size_t size() const
    {
        std::shared_lock lock(mutex_);
        return table_.size();
    }

private:
    static BiPoly build(FamilyId id)
    {
        switch (id.kind) {
        case FamilyKind::Laguerre: return build_laguerre(id.n);
        case FamilyKind::Gegenbauer: return build_gegenbauer(id.n);
        case FamilyKind::GegenbauerModified: return build_gegenbauer_modified(id.n);
        case FamilyKind::GegenbauerTilde: return build_gegenbauer_tilde(id.n).reduced;
        case FamilyKind::Charlier: break;
        }
        throw std::invalid_argument("Charlier polynomials depend on x0; use charlier(n, x0)");
    }

    mutable std::shared_mutex mutex_;
    std::map<FamilyId, std::shared_ptr<const BiPoly>> table_;
};

namespace detail {
inline std::atomic<bool>& large_degree_flag()
{
    static std::atomic<bool> flag{false};
    return flag;
}
} // namespace detail

/// Process-wide opt-in for degrees above the default cap (the CLI's --allow-large-n).
inline void allow_large_degrees(bool on) { detail::large_degree_flag().store(on); }
inline bool large_degrees_allowed() { return detail::large_degree_flag().load(); }

inline void check_degree_limit(int n, bool allow_large)
{
    if (n > kDefaultMaxDegree && !allow_large && !large_degrees_allowed())
        throw std::out_of_range("n = " + std::to_string(n) + " exceeds the default cap " + std::to_string(kDefaultMaxDegree)
                                + " (opt in to larger degrees explicitly)");
}

/// Cached bivariate family polynomial.
inline const BiPoly& family(FamilyId id, bool allow_large = false)
{
    check_degree_limit(id.n, allow_large);
    // Entries are never evicted, so the reference outlives the shared_ptr copy.
    return *FamilyCache::instance().get(id);
}

inline const BiPoly& laguerre(int n) { return family({FamilyKind::Laguerre, n}); }
inline const BiPoly& gegenbauer(int n) { return family({FamilyKind::Gegenbauer, n}); }
inline const BiPoly& gegenbauer_modified(int n) { return family({FamilyKind::GegenbauerModified, n}); }
inline TildeDecomposition gegenbauer_tilde(int n) { return build_gegenbauer_tilde(n); }

/// C_n^{(x0)}(z) = (-1)^n n! / x0^n * L_n(x0, z - n); the normalizing constant is taken to be x0.
inline UniPoly charlier(int n, const Rational& x0)
{
    detail::check_degree(n);
    if (sgn(x0) <= 0)
        throw std::domain_error("Charlier polynomials need x0 > 0");
    const UniPoly at_x0 = laguerre(n).specialize(Var::X, x0);
    const Rational scale = detail::signed_unit(n) * Rational(factorial(n)) / pow_int(x0, static_cast<unsigned long>(n));
    return at_x0.shifted(Rational(-n)) * scale;
}

/// k-th z-derivative of a family polynomial (zero for k > n).
inline BiPoly dz_family(FamilyId id, int k)
{
    if (k < 0)
        throw std::invalid_argument("derivative order must be >= 0");
    return family(id).differentiate(Var::Z, k);
}

} // namespace dualroots

#endif // DUALROOTS_FAMILIES_HPP
