#include "quadcode/gf.hpp"

#include <stdexcept>
#include <string>

namespace quadcode {

namespace {

using Poly = std::vector<int>;  // low degree first, trailing zeros trimmed

void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

int inverse_mod(int a, int p) {
    for (int x = 1; x < p; ++x)
        if ((a * x) % p == 1) return x;
    throw std::domain_error("no inverse mod p");
}

// Remainder of a modulo the nonzero polynomial m over GF(p).
Poly poly_mod(Poly a, const Poly& m, int p) {
    trim(a);
    const int dm = static_cast<int>(m.size()) - 1;
    const int lead_inv = inverse_mod(m.back(), p);
    while (static_cast<int>(a.size()) - 1 >= dm) {
        const int shift = static_cast<int>(a.size()) - 1 - dm;
        const int factor = (a.back() * lead_inv) % p;
        for (int i = 0; i <= dm; ++i) {
            a[shift + i] = ((a[shift + i] - factor * m[i]) % p + p) % p;
        }
        trim(a);
    }
    return a;
}

Poly decode(int value, int p, int h) {
    Poly out(h, 0);
    for (int i = 0; i < h; ++i) {
        out[i] = value % p;
        value /= p;
    }
    return out;
}

int encode(const Poly& a, int p) {
    int v = 0;
    for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i) v = v * p + a[i];
    return v;
}

int poly_mul_mod(int a, int b, const Poly& m, int p, int h) {
    const Poly pa = decode(a, p, h);
    const Poly pb = decode(b, p, h);
    Poly prod(2 * h, 0);
    for (int i = 0; i < h; ++i)
        for (int j = 0; j < h; ++j) prod[i + j] = (prod[i + j] + pa[i] * pb[j]) % p;
    Poly r = poly_mod(prod, m, p);
    r.resize(h, 0);
    return encode(r, p);
}

}  // namespace

bool is_prime(int n) {
    if (n < 2) return false;
    for (int d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

bool is_irreducible(const std::vector<int>& monic_coeffs, int p) {
    const int h = static_cast<int>(monic_coeffs.size()) - 1;
    if (h < 1) return false;
    // Any reducible polynomial has a monic factor of degree <= h/2.
    for (int d = 1; d <= h / 2; ++d) {
        int count = 1;
        for (int i = 0; i < d; ++i) count *= p;
        for (int low = 0; low < count; ++low) {
            Poly divisor = decode(low, p, d);
            divisor.push_back(1);
            if (poly_mod(monic_coeffs, divisor, p).empty()) return false;
        }
    }
    return true;
}

Field::Field(int p, int h) : p_(p), h_(h), q_(1) {
    if (!is_prime(p)) throw std::invalid_argument("characteristic " + std::to_string(p) + " is not prime");
    if (h < 1 || h > 4) throw std::invalid_argument("extension degree must lie in [1,4]");
    for (int i = 0; i < h; ++i) q_ *= p;
    if (q_ > 256) throw std::invalid_argument("field order " + std::to_string(q_) + " exceeds 256");

    if (h == 1) {
        poly_ = {0, 1};
    } else {
        int qh = q_;  // number of candidate lower parts = p^h
        for (int low = 0; low < qh; ++low) {
            Poly cand = decode(low, p, h);
            cand.push_back(1);
            if (is_irreducible(cand, p)) {
                poly_ = cand;
                break;
            }
        }
        if (poly_.empty()) throw std::logic_error("no irreducible polynomial found");
    }

    // Multiplication by direct polynomial arithmetic, used to seed the tables.
    auto slow_mul = [&](int a, int b) {
        if (h_ == 1) return (a * b) % p_;
        return poly_mul_mod(a, b, poly_, p_, h_);
    };

    // Smallest generator of the multiplicative group.
    int gen = -1;
    for (int g = 1; g < q_ && gen < 0; ++g) {
        int x = 1;
        int ord = 0;
        do {
            x = slow_mul(x, g);
            ++ord;
        } while (x != 1);
        if (ord == q_ - 1) gen = g;
    }
    if (gen < 0) throw std::logic_error("multiplicative group has no generator");

    exp_.assign(q_ - 1, 0);
    log_.assign(q_, -1);
    int x = 1;
    for (int k = 0; k < q_ - 1; ++k) {
        exp_[k] = static_cast<Element>(x);
        if (log_[x] != -1) throw std::logic_error("exp table is not a bijection");
        log_[x] = k;
        x = slow_mul(x, gen);
    }

    add_.assign(static_cast<std::size_t>(q_) * q_, 0);
    mul_.assign(static_cast<std::size_t>(q_) * q_, 0);
    neg_.assign(q_, 0);
    inv_.assign(q_, 0);
    for (int a = 0; a < q_; ++a) {
        const Poly pa = decode(a, p_, h_);
        Poly na(h_);
        for (int i = 0; i < h_; ++i) na[i] = (p_ - pa[i]) % p_;
        neg_[a] = static_cast<Element>(encode(na, p_));
        if (a != 0) inv_[a] = exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
        for (int b = 0; b < q_; ++b) {
            const Poly pb = decode(b, p_, h_);
            Poly s(h_);
            for (int i = 0; i < h_; ++i) s[i] = (pa[i] + pb[i]) % p_;
            add_[a * q_ + b] = static_cast<Element>(encode(s, p_));
            if (a != 0 && b != 0) mul_[a * q_ + b] = exp_[(log_[a] + log_[b]) % (q_ - 1)];
        }
    }
}

Element Field::inv(Element a) const {
    if (a == 0) throw std::domain_error("zero has no multiplicative inverse");
    return inv_[a];
}

int Field::log(Element a) const {
    if (a == 0) throw std::domain_error("logarithm of zero");
    return log_[a];
}

Element Field::pow(Element a, std::uint64_t e) const {
    if (e == 0) return 1;
    if (a == 0) return 0;
    return exp_[(static_cast<std::uint64_t>(log_[a]) * (e % (q_ - 1))) % (q_ - 1)];
}

Element Field::sqrt_char2(Element a) const {
    if (p_ != 2) throw std::domain_error("sqrt_char2 requires characteristic 2");
    // a^(q/2) squares back to a^q = a.
    return pow(a, static_cast<std::uint64_t>(q_ / 2));
}

FieldPtr make_field(int p, int h) { return std::make_shared<const Field>(p, h); }

FieldPtr make_field_of_order(int q) {
    if (q < 2) throw std::invalid_argument("field order must be at least 2");
    int p = 0;
    for (int d = 2; d <= q; ++d)
        if (q % d == 0) {
            p = d;
            break;
        }
    int h = 0;
    int rest = q;
    while (rest % p == 0) {
        rest /= p;
        ++h;
    }
    if (rest != 1) throw std::invalid_argument(std::to_string(q) + " is not a prime power");
    return make_field(p, h);
}

}  // namespace quadcode
