#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace ntc {

/// Element of GF(p^n) identified by its canonical index: the coefficient
/// vector of the residue polynomial read base p, constant term least
/// significant. Index 0 is zero and index 1 is one.
struct Felt {
    std::uint32_t index = 0;

    constexpr bool is_zero() const noexcept { return index == 0; }
    constexpr auto operator<=>(const Felt&) const = default;
};

/// Arithmetic context for GF(q^r) with q = p^e, built as F_p[t]/(modulus).
///
/// The subfield GF(q) is the fixed set of x -> x^q. Contexts are immutable
/// once built and are shared through FieldPtr.
class Field {
public:
    /// Largest supported field order.
    static constexpr std::uint64_t kMaxOrder = std::uint64_t{1} << 24;
    /// Fields up to this order use log/antilog tables for multiplication.
    static constexpr std::uint64_t kTableOrder = std::uint64_t{1} << 16;

    /// Throws ntc::Error for non-prime p, e == 0, r < 2, or an oversize field.
    static std::shared_ptr<const Field> build(std::uint32_t p, std::uint32_t e, std::uint32_t r);

    std::uint32_t characteristic() const noexcept { return p_; }
    std::uint32_t e() const noexcept { return e_; }
    std::uint32_t r() const noexcept { return r_; }
    /// Degree e*r of the extension over F_p.
    std::uint32_t degree() const noexcept { return e_ * r_; }
    /// Order of the subfield, q = p^e.
    std::uint64_t q() const noexcept { return q_; }
    /// Order of the field, Q = q^r.
    std::uint64_t order() const noexcept { return order_; }
    /// (q^r - 1) / (q - 1), the exponent of the norm map.
    std::uint64_t norm_exponent() const noexcept { return (order_ - 1) / (q_ - 1); }

    /// Monic modulus coefficients, constant term first, leading 1 last.
    const std::vector<std::uint32_t>& modulus() const noexcept { return modulus_; }
    std::string modulus_string() const;

    Felt zero() const noexcept { return Felt{0}; }
    Felt one() const noexcept { return Felt{1}; }
    /// Throws if index >= order().
    Felt element(std::uint64_t index) const;
    /// Image of an integer under Z -> F_p -> field.
    Felt from_int(std::int64_t v) const;
    /// Generator of the multiplicative group (least index with full order).
    Felt primitive() const noexcept { return primitive_; }

    Felt add(Felt a, Felt b) const noexcept
    {
        if (p_ == 2) return Felt{a.index ^ b.index};
        if (!add_table_.empty()) return Felt{add_table_[static_cast<std::size_t>(a.index) * order_ + b.index]};
        return add_digits(a, b, false);
    }
    Felt sub(Felt a, Felt b) const noexcept
    {
        if (p_ == 2) return Felt{a.index ^ b.index};
        return add(a, neg(b));
    }
    Felt neg(Felt a) const noexcept
    {
        if (p_ == 2) return a;
        if (!neg_table_.empty()) return Felt{neg_table_[a.index]};
        return add_digits(Felt{0}, a, true);
    }
    Felt mul(Felt a, Felt b) const noexcept
    {
        if (a.index == 0 || b.index == 0) return Felt{0};
        if (!log_.empty()) return Felt{exp_[log_[a.index] + log_[b.index]]};
        return mul_poly(a, b);
    }
    /// Throws on zero.
    Felt inv(Felt a) const;
    Felt div(Felt a, Felt b) const { return mul(a, inv(b)); }
    Felt pow(Felt a, std::uint64_t k) const noexcept;

    /// x -> x^q.
    Felt frobenius(Felt a) const noexcept { return pow(a, q_); }
    /// Sum of a^(q^i) for i = 0..r-1; lands in GF(q).
    Felt trace(Felt a) const noexcept;
    /// a^((q^r-1)/(q-1)); lands in GF(q).
    Felt norm(Felt a) const noexcept { return pow(a, norm_exponent()); }
    bool in_subfield(Felt a) const noexcept { return frobenius(a) == a; }
    /// The q elements of GF(q), in index order.
    std::vector<Felt> subfield_elements() const;
    /// All y with trace(y) == v, in index order. Throws if v is not in GF(q).
    std::vector<Felt> trace_fiber(Felt v) const;

    /// Coefficients of the residue polynomial, constant term first.
    std::vector<std::uint32_t> digits(Felt a) const;
    Felt from_digits(const std::vector<std::uint32_t>& digits) const;
    /// Polynomial in t, e.g. "t^2+2t+1"; "0" for zero.
    std::string to_poly_string(Felt a) const;

private:
    Field() = default;

    Felt add_digits(Felt a, Felt b, bool negate_b) const noexcept;
    Felt mul_poly(Felt a, Felt b) const noexcept;

    std::uint32_t p_ = 0;
    std::uint32_t e_ = 0;
    std::uint32_t r_ = 0;
    std::uint64_t q_ = 0;
    std::uint64_t order_ = 0;
    std::vector<std::uint32_t> modulus_;
    std::vector<std::uint32_t> pow_p_;  // p^i for i < degree
    Felt primitive_{};

    std::vector<std::uint32_t> log_;  // log_[0] unused
    std::vector<std::uint32_t> exp_;  // doubled to skip a modular reduction
    std::vector<std::uint16_t> add_table_;
    std::vector<std::uint32_t> neg_table_;
    std::vector<Felt> subfield_;
    std::vector<std::vector<Felt>> trace_fibers_;  // parallel to subfield_
};

using FieldPtr = std::shared_ptr<const Field>;

/// True if n is prime (trial division; inputs here are small).
bool is_prime(std::uint64_t n) noexcept;

/// Splits a prime power q into (p, e). Throws if q is not a prime power.
std::pair<std::uint32_t, std::uint32_t> split_prime_power(std::uint64_t q);

}  // namespace ntc
