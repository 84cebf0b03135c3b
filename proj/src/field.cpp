#include "ntcodes/field.hpp"

#include <algorithm>
#include <sstream>

#include "ntcodes/error.hpp"

namespace ntc {

std::string_view to_string(ErrorKind kind)
{
    switch (kind) {
        case ErrorKind::InvalidArgument: return "invalid_argument";
        case ErrorKind::OutOfRange: return "out_of_range";
        case ErrorKind::Unsupported: return "unsupported";
        case ErrorKind::SizeGuard: return "size_guard";
        case ErrorKind::Io: return "io";
    }
    return "unknown";
}

bool is_prime(std::uint64_t n) noexcept
{
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::pair<std::uint32_t, std::uint32_t> split_prime_power(std::uint64_t q)
{
    if (q < 2) throw Error(ErrorKind::InvalidArgument, "q must be a prime power, got " + std::to_string(q));
    std::uint64_t p = 2;
    while (q % p != 0) ++p;
    std::uint32_t e = 0;
    std::uint64_t rest = q;
    while (rest % p == 0) {
        rest /= p;
        ++e;
    }
    if (rest != 1) throw Error(ErrorKind::InvalidArgument, "q must be a prime power, got " + std::to_string(q));
    return {static_cast<std::uint32_t>(p), e};
}

namespace {

// Dense polynomials over F_p, constant term first, no trailing zeros.
using Poly = std::vector<std::uint32_t>;

void trim(Poly& f)
{
    while (!f.empty() && f.back() == 0) f.pop_back();
}

std::uint32_t inv_mod_p(std::uint32_t a, std::uint32_t p)
{
    std::uint64_t result = 1, base = a % p, k = p - 2;
    while (k) {
        if (k & 1) result = result * base % p;
        base = base * base % p;
        k >>= 1;
    }
    return static_cast<std::uint32_t>(result);
}

Poly poly_mod(Poly a, const Poly& m, std::uint32_t p)
{
    trim(a);
    const std::size_t dm = m.size() - 1;
    const std::uint32_t lead_inv = inv_mod_p(m.back(), p);
    while (a.size() > dm) {
        const std::size_t shift = a.size() - 1 - dm;
        const std::uint64_t factor = std::uint64_t{a.back()} * lead_inv % p;
        for (std::size_t i = 0; i <= dm; ++i) {
            const std::uint64_t sub = factor * m[i] % p;
            a[i + shift] = static_cast<std::uint32_t>((a[i + shift] + p - sub) % p);
        }
        trim(a);
    }
    return a;
}

Poly poly_mul(const Poly& a, const Poly& b, std::uint32_t p)
{
    if (a.empty() || b.empty()) return {};
    Poly out(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            out[i + j] = static_cast<std::uint32_t>((out[i + j] + std::uint64_t{a[i]} * b[j]) % p);
    }
    trim(out);
    return out;
}

Poly poly_gcd(Poly a, Poly b, std::uint32_t p)
{
    trim(a);
    trim(b);
    while (!b.empty()) {
        Poly r = poly_mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

Poly poly_powmod(Poly base, std::uint64_t k, const Poly& m, std::uint32_t p)
{
    Poly result{1};
    base = poly_mod(std::move(base), m, p);
    while (k) {
        if (k & 1) result = poly_mod(poly_mul(result, base, p), m, p);
        base = poly_mod(poly_mul(base, base, p), m, p);
        k >>= 1;
    }
    return result;
}

// Rabin-style test: a degree-n f is irreducible iff gcd(f, x^(p^k) - x) = 1
// for every k <= n/2.
bool is_irreducible(const Poly& f, std::uint32_t p)
{
    const std::size_t n = f.size() - 1;
    Poly h{0, 1};
    for (std::size_t k = 1; k <= n / 2; ++k) {
        h = poly_powmod(h, p, f, p);
        Poly diff = h;
        if (diff.size() < 2) diff.resize(2, 0);
        diff[1] = (diff[1] + p - 1) % p;
        trim(diff);
        if (diff.empty()) return false;
        if (poly_gcd(f, diff, p).size() > 1) return false;
    }
    return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n)
{
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

}  // namespace

std::shared_ptr<const Field> Field::build(std::uint32_t p, std::uint32_t e, std::uint32_t r)
{
    if (!is_prime(p)) throw Error(ErrorKind::InvalidArgument, "characteristic must be prime, got " + std::to_string(p));
    if (e == 0) throw Error(ErrorKind::InvalidArgument, "e must be positive");
    if (r < 2) throw Error(ErrorKind::InvalidArgument, "r must be at least 2, got " + std::to_string(r));

    const std::uint32_t n = e * r;
    std::uint64_t order = 1;
    for (std::uint32_t i = 0; i < n; ++i) {
        order *= p;
        if (order > kMaxOrder)
            throw Error(ErrorKind::SizeGuard, "field order exceeds 2^24 (p=" + std::to_string(p) +
                                                  ", e*r=" + std::to_string(n) + ")");
    }

    std::shared_ptr<Field> f(new Field());
    f->p_ = p;
    f->e_ = e;
    f->r_ = r;
    f->order_ = order;
    f->q_ = 1;
    for (std::uint32_t i = 0; i < e; ++i) f->q_ *= p;
    f->pow_p_.resize(n);
    for (std::uint32_t i = 0; i < n; ++i) f->pow_p_[i] = i == 0 ? 1 : f->pow_p_[i - 1] * p;

    // Lexicographically least monic irreducible: scan the non-leading
    // coefficients as a base-p counter, constant term least significant.
    Poly candidate(n + 1, 0);
    candidate[n] = 1;
    for (std::uint64_t code = 0; code < order; ++code) {
        std::uint64_t rest = code;
        for (std::uint32_t i = 0; i < n; ++i) {
            candidate[i] = static_cast<std::uint32_t>(rest % p);
            rest /= p;
        }
        if (candidate[0] == 0) continue;
        if (is_irreducible(candidate, p)) {
            f->modulus_ = candidate;
            break;
        }
    }
    if (f->modulus_.empty()) throw Error(ErrorKind::InvalidArgument, "no irreducible modulus found");

    if (p != 2) {
        if (order <= 1024) {
            f->add_table_.resize(order * order);
            for (std::uint64_t a = 0; a < order; ++a)
                for (std::uint64_t b = 0; b < order; ++b)
                    f->add_table_[a * order + b] = static_cast<std::uint16_t>(
                        f->add_digits(Felt{static_cast<std::uint32_t>(a)}, Felt{static_cast<std::uint32_t>(b)}, false)
                            .index);
        }
        if (order <= kTableOrder) {
            f->neg_table_.resize(order);
            for (std::uint64_t a = 0; a < order; ++a)
                f->neg_table_[a] = f->add_digits(Felt{0}, Felt{static_cast<std::uint32_t>(a)}, true).index;
        }
    }

    const auto factors = prime_factors(order - 1);
    for (std::uint64_t idx = 1; idx < order; ++idx) {
        const Felt g{static_cast<std::uint32_t>(idx)};
        bool full = true;
        for (auto l : factors) {
            if (f->pow(g, (order - 1) / l) == f->one()) {
                full = false;
                break;
            }
        }
        if (full) {
            f->primitive_ = g;
            break;
        }
    }

    if (order <= kTableOrder) {
        f->log_.assign(order, 0);
        f->exp_.assign(2 * (order - 1), 0);
        Felt x = f->one();
        for (std::uint64_t i = 0; i < order - 1; ++i) {
            f->exp_[i] = x.index;
            f->exp_[i + order - 1] = x.index;
            f->log_[x.index] = static_cast<std::uint32_t>(i);
            x = f->mul_poly(x, f->primitive_);
        }
    }

    for (std::uint64_t idx = 0; idx < order; ++idx) {
        const Felt a{static_cast<std::uint32_t>(idx)};
        if (f->in_subfield(a)) f->subfield_.push_back(a);
    }
    if (order <= kTableOrder) {
        f->trace_fibers_.resize(f->subfield_.size());
        for (std::uint64_t idx = 0; idx < order; ++idx) {
            const Felt a{static_cast<std::uint32_t>(idx)};
            const Felt t = f->trace(a);
            const auto pos = std::lower_bound(f->subfield_.begin(), f->subfield_.end(), t) - f->subfield_.begin();
            f->trace_fibers_[pos].push_back(a);
        }
    }
    return f;
}

std::string Field::modulus_string() const
{
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = modulus_.size(); i-- > 0;) {
        const auto c = modulus_[i];
        if (c == 0) continue;
        if (!first) os << '+';
        first = false;
        if (c != 1 || i == 0) os << c;
        if (i >= 1) os << 't';
        if (i >= 2) os << '^' << i;
    }
    return os.str();
}

Felt Field::element(std::uint64_t index) const
{
    if (index >= order_)
        throw Error(ErrorKind::OutOfRange,
                    "element index " + std::to_string(index) + " outside field of order " + std::to_string(order_));
    return Felt{static_cast<std::uint32_t>(index)};
}

Felt Field::from_int(std::int64_t v) const
{
    const std::int64_t pp = p_;
    return Felt{static_cast<std::uint32_t>(((v % pp) + pp) % pp)};
}

Felt Field::inv(Felt a) const
{
    if (a.is_zero()) throw Error(ErrorKind::InvalidArgument, "inverse of zero");
    if (!log_.empty()) return Felt{exp_[(order_ - 1 - log_[a.index]) % (order_ - 1)]};
    return pow(a, order_ - 2);
}

Felt Field::pow(Felt a, std::uint64_t k) const noexcept
{
    if (k == 0) return one();
    if (a.is_zero()) return zero();
    if (!log_.empty()) {
        const std::uint64_t l = (static_cast<std::uint64_t>(log_[a.index]) * (k % (order_ - 1))) % (order_ - 1);
        return Felt{exp_[l]};
    }
    Felt result = one();
    Felt base = a;
    while (k) {
        if (k & 1) result = mul(result, base);
        base = mul(base, base);
        k >>= 1;
    }
    return result;
}

Felt Field::trace(Felt a) const noexcept
{
    Felt sum = zero();
    Felt term = a;
    for (std::uint32_t i = 0; i < r_; ++i) {
        sum = add(sum, term);
        term = frobenius(term);
    }
    return sum;
}

std::vector<Felt> Field::subfield_elements() const { return subfield_; }

std::vector<Felt> Field::trace_fiber(Felt v) const
{
    const auto it = std::lower_bound(subfield_.begin(), subfield_.end(), v);
    if (it == subfield_.end() || *it != v)
        throw Error(ErrorKind::InvalidArgument, "trace_fiber: element " + std::to_string(v.index) + " is not in GF(q)");
    if (!trace_fibers_.empty()) return trace_fibers_[static_cast<std::size_t>(it - subfield_.begin())];
    std::vector<Felt> out;
    for (std::uint64_t idx = 0; idx < order_; ++idx) {
        const Felt a{static_cast<std::uint32_t>(idx)};
        if (trace(a) == v) out.push_back(a);
    }
    return out;
}

std::vector<std::uint32_t> Field::digits(Felt a) const
{
    std::vector<std::uint32_t> out(degree(), 0);
    std::uint32_t rest = a.index;
    for (auto& d : out) {
        d = rest % p_;
        rest /= p_;
    }
    return out;
}

Felt Field::from_digits(const std::vector<std::uint32_t>& ds) const
{
    std::uint64_t idx = 0;
    for (std::size_t i = ds.size(); i-- > 0;) idx = idx * p_ + ds[i] % p_;
    return element(idx);
}

std::string Field::to_poly_string(Felt a) const
{
    if (a.is_zero()) return "0";
    const auto ds = digits(a);
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = ds.size(); i-- > 0;) {
        if (ds[i] == 0) continue;
        if (!first) os << '+';
        first = false;
        if (ds[i] != 1 || i == 0) os << ds[i];
        if (i >= 1) os << 't';
        if (i >= 2) os << '^' << i;
    }
    return os.str();
}

Felt Field::add_digits(Felt a, Felt b, bool negate_b) const noexcept
{
    std::uint32_t ra = a.index, rb = b.index, out = 0;
    for (std::uint32_t i = 0; i < degree(); ++i) {
        const std::uint32_t da = ra % p_, db = rb % p_;
        ra /= p_;
        rb /= p_;
        const std::uint32_t s = negate_b ? (da + p_ - db) % p_ : (da + db) % p_;
        out += s * pow_p_[i];
    }
    return Felt{out};
}

Felt Field::mul_poly(Felt a, Felt b) const noexcept
{
    Poly pa = digits(a), pb = digits(b);
    trim(pa);
    trim(pb);
    Poly prod = poly_mod(poly_mul(pa, pb, p_), modulus_, p_);
    std::uint32_t idx = 0;
    for (std::size_t i = prod.size(); i-- > 0;) idx = idx * p_ + prod[i];
    return Felt{idx};
}

}  // namespace ntc
