#pragma once

#include <cstdint>
#include <memory>
#include <vector>

namespace quadcode {

/// Canonical encoding of a field element: the base-p digits of the integer
/// are the coefficients of the polynomial representative, low degree first.
/// 0 is the additive identity and 1 the multiplicative identity.
using Element = std::uint8_t;

/// Table-driven arithmetic in GF(p^h), q = p^h <= 256, h <= 4.
///
/// The reduction polynomial is the monic irreducible of degree h with the
/// smallest encoding (sum of c_i p^i over the non-leading coefficients). For
/// the orders used in practice this gives GF(4): x^2+x+1, GF(8): x^3+x+1,
/// GF(9): x^2+1, GF(16): x^4+x+1, GF(25): x^2+2, GF(27): x^3+2x+1.
class Field {
public:
    Field(int p, int h);

    int characteristic() const { return p_; }
    int degree() const { return h_; }
    int order() const { return q_; }

    /// Coefficients c_0..c_h of the reduction polynomial (c_h = 1).
    const std::vector<int>& reduction_polynomial() const { return poly_; }

    /// Smallest element generating the multiplicative group.
    Element generator() const { return exp_[1]; }

    bool contains(int a) const { return a >= 0 && a < q_; }

    Element add(Element a, Element b) const { return add_[a * q_ + b]; }
    Element sub(Element a, Element b) const { return add_[a * q_ + neg_[b]]; }
    Element neg(Element a) const { return neg_[a]; }
    Element mul(Element a, Element b) const { return mul_[a * q_ + b]; }
    Element inv(Element a) const;
    Element div(Element a, Element b) const { return mul(a, inv(b)); }
    Element pow(Element a, std::uint64_t e) const;

    /// Discrete exponential g^k for the fixed generator g (k taken mod q-1).
    Element exp(std::uint64_t k) const { return exp_[k % (q_ - 1)]; }
    /// Discrete logarithm; a must be nonzero.
    int log(Element a) const;

    /// Unique square root in characteristic 2 (inverse Frobenius).
    Element sqrt_char2(Element a) const;

    /// Pointers into the dense q*q tables, row-major by first operand.
    const Element* add_table() const { return add_.data(); }
    const Element* mul_table() const { return mul_.data(); }

private:
    int p_;
    int h_;
    int q_;
    std::vector<int> poly_;
    std::vector<Element> exp_;
    std::vector<int> log_;
    std::vector<Element> add_;
    std::vector<Element> mul_;
    std::vector<Element> neg_;
    std::vector<Element> inv_;
};

using FieldPtr = std::shared_ptr<const Field>;

/// Builds GF(p^h). Throws std::invalid_argument when p is not prime, h is
/// outside [1,4] or p^h exceeds 256.
FieldPtr make_field(int p, int h);

/// Builds the field of order q by factoring q = p^h.
FieldPtr make_field_of_order(int q);

/// True when the monic polynomial with coefficients c_0..c_h (c_h = 1) has no
/// factor of degree between 1 and h/2 over GF(p).
bool is_irreducible(const std::vector<int>& monic_coeffs, int p);

bool is_prime(int n);

}  // namespace quadcode
