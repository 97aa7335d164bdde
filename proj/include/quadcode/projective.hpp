#pragma once

#include <compare>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "quadcode/gf.hpp"
#include "quadcode/linalg.hpp"

namespace quadcode {

class Geometry;
using GeometryPtr = std::shared_ptr<const Geometry>;

/// Nonzero (N+1)-vector whose leftmost nonzero coordinate is 1.
struct ProjectivePoint {
    Vector coords;
    auto operator<=>(const ProjectivePoint&) const = default;
};

/// Dual point: coefficient vector of a linear form, normalized like a point.
struct Hyperplane {
    Vector coeffs;
    auto operator<=>(const Hyperplane&) const = default;
};

/// PG(N,q) with its points enumerated once, in lexicographic order of the
/// coordinate encodings. That order is the column order of every generator
/// matrix and must not change.
///
/// A geometry also owns the chain of lower-dimensional geometries
/// PG(N-1,q), ..., PG(0,q), which host restricted forms (sections).
class Geometry {
public:
    struct Private {};
    Geometry(Private, FieldPtr field, int N);

    int dimension() const { return N_; }
    /// l = (N-1)/2 for odd N and N/2 for even N.
    int half_dimension() const { return N_ % 2 ? (N_ - 1) / 2 : N_ / 2; }
    int q() const { return field_->order(); }
    const Field& field() const { return *field_; }
    const FieldPtr& field_ptr() const { return field_; }

    std::size_t point_count() const { return count_; }
    std::span<const Element> point(std::size_t index) const {
        return {points_.data() + index * (N_ + 1), static_cast<std::size_t>(N_ + 1)};
    }
    /// Position of a normalized vector in the canonical order.
    std::size_t index_of(std::span<const Element> normalized) const;

    /// PG(m,q) for 0 <= m <= N (m == N returns this geometry).
    const Geometry& lower(int m) const;
    GeometryPtr lower_ptr(int m) const;

private:
    FieldPtr field_;
    int N_;
    std::size_t count_;
    std::vector<Element> points_;
    GeometryPtr lower_;
    std::weak_ptr<const Geometry> self_;
    friend GeometryPtr make_geometry(FieldPtr, int);
};

/// Builds PG(N,q) for N >= 0. Throws std::invalid_argument for negative N or
/// when the point table would exceed 2^24 points.
GeometryPtr make_geometry(FieldPtr field, int N);

/// (q^(m+1) - 1) / (q - 1): number of points of PG(m,q); 0 for m < 0.
std::uint64_t projective_size(int m, int q);

/// Scales v so its leftmost nonzero coordinate is 1. Throws std::domain_error
/// on the zero vector.
Vector normalize(const Field& field, std::span<const Element> v);
ProjectivePoint make_point(const Field& field, std::span<const Element> v);
Hyperplane make_hyperplane(const Field& field, std::span<const Element> v);

std::vector<ProjectivePoint> enumerate_points(const Geometry& g);
std::vector<Hyperplane> enumerate_hyperplanes(const Geometry& g);

/// Sum of a_i x_i.
Element dot(const Field& field, std::span<const Element> a, std::span<const Element> x);

bool incident(const Field& field, const Hyperplane& h, std::span<const Element> point);

/// Projective subspace stored by its reduced echelon basis.
class Subspace {
public:
    Subspace(FieldPtr field, std::size_t length, const std::vector<Vector>& spanning);

    /// Projective dimension, |basis| - 1 (so -1 for the empty subspace).
    int dimension() const { return static_cast<int>(basis_.size()) - 1; }
    const std::vector<Vector>& basis() const { return basis_; }
    std::size_t ambient_length() const { return length_; }

    bool contains(std::span<const Element> v) const;
    /// Normalized points of the subspace, sorted in canonical order.
    std::vector<ProjectivePoint> points() const;
    /// Indices of the subspace's points in g's canonical order, ascending.
    std::vector<std::size_t> point_indices(const Geometry& g) const;

    bool operator==(const Subspace& other) const { return length_ == other.length_ && basis_ == other.basis_; }

private:
    FieldPtr field_;
    std::size_t length_;
    std::vector<Vector> basis_;
};

/// The codimension-2 space h1 ∩ h2. Throws std::domain_error if h1 == h2.
Subspace intersect(const Hyperplane& h1, const Hyperplane& h2, const Geometry& g);

}  // namespace quadcode
