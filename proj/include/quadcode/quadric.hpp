#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "quadcode/linalg.hpp"
#include "quadcode/projective.hpp"

namespace quadcode {

/// The three families of non-singular quadrics.
enum class Family { parabolic, hyperbolic, elliptic };

/// Base of a cone pi_s B. The last four kinds are the rank <= 2 cases, which
/// have their own names; `empty_or_degenerate` is reserved for the zero form
/// and is never produced by classify().
enum class BaseKind {
    parabolic,
    hyperbolic,
    elliptic,
    two_distinct_hyperplanes,
    repeated_hyperplane,
    conjugate_hyperplane_pair,
    empty_or_degenerate,
};

std::string_view to_string(Family f);
std::string_view to_string(BaseKind k);
/// Throws std::invalid_argument on an unknown name.
Family parse_family(std::string_view name);

/// f = sum_{i<=j} a_ij X_i X_j, stored upper-triangular in the order
/// (0,0),(0,1),...,(0,N),(1,1),...,(N,N). No division by 2 is ever needed,
/// so characteristic 2 uses the same representation.
class QuadraticForm {
public:
    QuadraticForm(GeometryPtr geometry, Vector coeffs);
    static QuadraticForm zero(GeometryPtr geometry);

    static std::size_t coefficient_count(int N) { return static_cast<std::size_t>((N + 1) * (N + 2) / 2); }
    static std::size_t monomial_index(int N, int i, int j);

    const Geometry& geometry() const { return *geometry_; }
    const GeometryPtr& geometry_ptr() const { return geometry_; }
    const Field& field() const { return geometry_->field(); }
    int dimension() const { return geometry_->dimension(); }
    const Vector& coeffs() const { return coeffs_; }

    Element coeff(int i, int j) const;
    QuadraticForm with_coeff(int i, int j, Element value) const;

    bool is_zero() const;
    Element evaluate(std::span<const Element> x) const;
    /// B(x,y) = f(x+y) - f(x) - f(y).
    Element polar(std::span<const Element> x, std::span<const Element> y) const;

    QuadraticForm scaled(Element lambda) const;
    QuadraticForm operator+(const QuadraticForm& other) const;

    /// True when other = lambda * this for some nonzero lambda.
    bool proportional_to(const QuadraticForm& other) const;

    bool operator==(const QuadraticForm& other) const;

    /// "q N a00 a01 ... aNN".
    std::string to_line() const;

private:
    GeometryPtr geometry_;
    Vector coeffs_;
};

/// Parses a form line, building the field and geometry it names.
QuadraticForm parse_form_line(std::string_view line);
/// Parses a form line that must match the given geometry.
QuadraticForm parse_form_line(std::string_view line, const GeometryPtr& geometry);

/// Standard equation of a non-singular quadric of the family. Parabolic needs
/// even N, hyperbolic and elliptic odd N. The elliptic binary part is
/// X0^2 + b X0X1 + c X1^2 with (b, c) the smallest encodings making it
/// irreducible (X0^2+X0X1+X1^2 for q = 2, X0^2+X1^2 for q = 3).
QuadraticForm standard_form(Family family, const GeometryPtr& geometry);

/// Form of the product of two linear forms.
QuadraticForm product_form(const GeometryPtr& geometry, std::span<const Element> h1, std::span<const Element> h2);

/// f(sum y_k v_k) as a form in the y_k, living on PG(|basis|-1, q).
QuadraticForm restrict_form(const QuadraticForm& f, const std::vector<Vector>& basis);

std::vector<ProjectivePoint> point_set(const QuadraticForm& f);
std::vector<std::size_t> point_indices(const QuadraticForm& f);
std::uint64_t point_count(const QuadraticForm& f);

/// Matrix of the polar form: B_ij = a_ij off the diagonal, B_ii = 2 a_ii.
Matrix polar_matrix(const QuadraticForm& f);

/// Singular points: x with B(x,.) = 0 and f(x) = 0. Projective dimension -1
/// means non-singular.
Subspace vertex(const QuadraticForm& f);

/// N + 1 - dim(vertex as a vector space).
int form_rank(const QuadraticForm& f);

struct QuadricClass {
    int vertex_dim = -1;
    BaseKind base_kind = BaseKind::empty_or_degenerate;
    std::uint64_t point_count = 0;

    bool singular() const { return vertex_dim >= 0; }
    /// Dimension of the base space, N - s - 1.
    int base_dimension(int N) const { return N - vertex_dim - 1; }
    /// Family of the base with the rank <= 2 kinds folded in: two hyperplanes
    /// are a hyperbolic Q+(1,q) base, a conjugate pair an elliptic Q-(1,q), a
    /// repeated hyperplane a parabolic Q(0,q).
    Family base_family() const;

    bool operator==(const QuadricClass&) const = default;
};

/// Throws std::invalid_argument on the zero form.
QuadricClass classify(const QuadraticForm& f);

/// Rank <= 2 kind of a nonzero form, or nullopt when it has rank >= 3.
std::optional<BaseKind> reducible_kind(const QuadraticForm& f);

/// Size of pi_s B in PG(N,q) from the closed forms for a hyperbolic,
/// elliptic or parabolic base (reducible kinds map onto the smallest bases).
/// s = -1 gives the non-singular sizes. Throws std::invalid_argument when the
/// base dimension N-s-1 has the wrong parity for the kind.
std::uint64_t cone_size(int s, BaseKind kind, int N, int q);

/// Size of the non-singular quadric of the family in PG(N,q).
std::uint64_t quadric_size(Family family, int N, int q);

/// Hyperplane with coefficients B P. Throws std::domain_error when P is off
/// the quadric or B P = 0.
Hyperplane tangent_hyperplane(const QuadraticForm& f, const ProjectivePoint& p);

/// For even q and a non-singular parabolic form: the point spanning the
/// radical of the alternating polar matrix. Throws std::domain_error for odd q.
ProjectivePoint nucleus(const QuadraticForm& f);

/// Hyperplanes through a codimension-2 space, as (h1 + t h2 for t in GF(q)) then h2.
std::vector<Hyperplane> hyperplanes_through(const Subspace& s, const Geometry& g);

/// Class of f restricted to a subspace (given by its basis).
QuadricClass classify_on(const QuadraticForm& f, const Subspace& s);
QuadricClass classify_section(const QuadraticForm& f, const Hyperplane& h);

struct SectionProfile {
    int tangent_count = 0;
    int hyperbolic_count = 0;
    int elliptic_count = 0;
    int parabolic_count = 0;
    std::vector<Hyperplane> hyperplanes;
    std::vector<QuadricClass> sections;

    int total() const { return tangent_count + hyperbolic_count + elliptic_count + parabolic_count; }
};

/// How the q+1 hyperplanes through S meet a non-singular quadric.
/// Throws std::invalid_argument unless dim S = N - 2.
SectionProfile section_profile(const QuadraticForm& f, const Subspace& s);

}  // namespace quadcode
