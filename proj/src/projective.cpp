#include "quadcode/projective.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace quadcode {

namespace {
constexpr std::uint64_t kMaxPoints = std::uint64_t{1} << 24;
}

std::uint64_t projective_size(int m, int q) {
    if (m < 0) return 0;
    std::uint64_t total = 0;
    std::uint64_t power = 1;
    for (int i = 0; i <= m; ++i) {
        total += power;
        power *= static_cast<std::uint64_t>(q);
    }
    return total;
}

Geometry::Geometry(Private, FieldPtr field, int N) : field_(std::move(field)), N_(N), count_(0) {
    if (N < 0) throw std::invalid_argument("projective dimension must be non-negative");
    const std::uint64_t n = projective_size(N, field_->order());
    if (n > kMaxPoints) throw std::invalid_argument("PG(" + std::to_string(N) + "," + std::to_string(field_->order()) + ") exceeds the point table cap");
    count_ = static_cast<std::size_t>(n);
    points_.reserve(count_ * (N + 1));

    // Counting through all vectors with x_0 most significant visits them in
    // lexicographic order; the normalized ones are exactly the points.
    const int q = field_->order();
    Vector v(N + 1, 0);
    while (true) {
        int pos = N;
        while (pos >= 0 && v[pos] == q - 1) v[pos--] = 0;
        if (pos < 0) break;
        ++v[pos];
        auto lead = std::find_if(v.begin(), v.end(), [](Element e) { return e != 0; });
        if (*lead == 1) points_.insert(points_.end(), v.begin(), v.end());
    }
}

GeometryPtr make_geometry(FieldPtr field, int N) {
    if (N < 0) throw std::invalid_argument("projective dimension must be non-negative");
    if (projective_size(N, field->order()) > kMaxPoints)
        throw std::invalid_argument("PG(" + std::to_string(N) + "," + std::to_string(field->order()) + ") exceeds the point table cap");
    GeometryPtr lower;
    if (N > 0) lower = make_geometry(field, N - 1);
    auto g = std::make_shared<Geometry>(Geometry::Private{}, std::move(field), N);
    g->lower_ = std::move(lower);
    g->self_ = g;
    return g;
}

std::size_t Geometry::index_of(std::span<const Element> v) const {
    if (v.size() != static_cast<std::size_t>(N_ + 1)) throw std::invalid_argument("coordinate length mismatch");
    const std::size_t q = static_cast<std::size_t>(field_->order());
    std::size_t lead = 0;
    while (lead < v.size() && v[lead] == 0) ++lead;
    if (lead == v.size() || v[lead] != 1) throw std::invalid_argument("vector is not normalized");
    // Points whose lead sits further right come first: (q^(N-lead) - 1)/(q-1) of them.
    std::size_t before = 0;
    std::size_t power = 1;
    for (std::size_t i = lead + 1; i < v.size(); ++i) {
        before += power;
        power *= q;
    }
    std::size_t tail = 0;
    for (std::size_t i = lead + 1; i < v.size(); ++i) tail = tail * q + v[i];
    return before + tail;
}

const Geometry& Geometry::lower(int m) const {
    if (m < 0 || m > N_) throw std::invalid_argument("lower dimension out of range");
    const Geometry* g = this;
    while (g->N_ > m) g = g->lower_.get();
    return *g;
}

GeometryPtr Geometry::lower_ptr(int m) const {
    if (m < 0 || m > N_) throw std::invalid_argument("lower dimension out of range");
    if (m == N_) return self_.lock();
    GeometryPtr g = lower_;
    while (g->N_ > m) g = g->lower_;
    return g;
}

Vector normalize(const Field& field, std::span<const Element> v) {
    auto lead = std::find_if(v.begin(), v.end(), [](Element e) { return e != 0; });
    if (lead == v.end()) throw std::domain_error("cannot normalize the zero vector");
    const Element s = field.inv(*lead);
    Vector out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = field.mul(v[i], s);
    return out;
}

ProjectivePoint make_point(const Field& field, std::span<const Element> v) { return {normalize(field, v)}; }

Hyperplane make_hyperplane(const Field& field, std::span<const Element> v) { return {normalize(field, v)}; }

std::vector<ProjectivePoint> enumerate_points(const Geometry& g) {
    std::vector<ProjectivePoint> out;
    out.reserve(g.point_count());
    for (std::size_t i = 0; i < g.point_count(); ++i) {
        auto p = g.point(i);
        out.push_back({Vector(p.begin(), p.end())});
    }
    return out;
}

std::vector<Hyperplane> enumerate_hyperplanes(const Geometry& g) {
    std::vector<Hyperplane> out;
    out.reserve(g.point_count());
    for (std::size_t i = 0; i < g.point_count(); ++i) {
        auto p = g.point(i);
        out.push_back({Vector(p.begin(), p.end())});
    }
    return out;
}

Element dot(const Field& field, std::span<const Element> a, std::span<const Element> x) {
    Element acc = 0;
    for (std::size_t i = 0; i < a.size(); ++i) acc = field.add(acc, field.mul(a[i], x[i]));
    return acc;
}

bool incident(const Field& field, const Hyperplane& h, std::span<const Element> point) {
    return dot(field, h.coeffs, point) == 0;
}

Subspace::Subspace(FieldPtr field, std::size_t length, const std::vector<Vector>& spanning)
    : field_(std::move(field)), length_(length), basis_(echelon_basis(field_, spanning, length)) {}

bool Subspace::contains(std::span<const Element> v) const {
    if (v.size() != length_) throw std::invalid_argument("vector length mismatch");
    // Reduce v against the echelon basis; it lies in the span iff nothing remains.
    Vector r(v.begin(), v.end());
    const Field& F = *field_;
    for (const auto& b : basis_) {
        std::size_t pivot = 0;
        while (b[pivot] == 0) ++pivot;
        const Element c = r[pivot];
        if (c == 0) continue;
        for (std::size_t i = 0; i < length_; ++i) r[i] = F.sub(r[i], F.mul(c, b[i]));
    }
    return std::all_of(r.begin(), r.end(), [](Element e) { return e == 0; });
}

std::vector<ProjectivePoint> Subspace::points() const {
    std::vector<ProjectivePoint> out;
    const std::size_t k = basis_.size();
    if (k == 0) return out;
    const Field& F = *field_;
    const int q = F.order();
    // With a reduced echelon basis, a combination whose first nonzero
    // coefficient is 1 is already normalized, and each point arises once.
    Vector c(k, 0);
    for (std::size_t lead = 0; lead < k; ++lead) {
        std::fill(c.begin(), c.end(), 0);
        c[lead] = 1;
        while (true) {
            Vector v(length_, 0);
            for (std::size_t i = lead; i < k; ++i) {
                if (c[i] == 0) continue;
                for (std::size_t j = 0; j < length_; ++j) v[j] = F.add(v[j], F.mul(c[i], basis_[i][j]));
            }
            out.push_back({std::move(v)});
            std::size_t pos = k;
            while (pos > lead + 1 && c[pos - 1] == q - 1) c[--pos] = 0;
            if (pos == lead + 1) break;
            ++c[pos - 1];
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::size_t> Subspace::point_indices(const Geometry& g) const {
    std::vector<std::size_t> out;
    for (const auto& p : points()) out.push_back(g.index_of(p.coords));
    std::sort(out.begin(), out.end());
    return out;
}

Subspace intersect(const Hyperplane& h1, const Hyperplane& h2, const Geometry& g) {
    if (h1 == h2) throw std::domain_error("intersect requires distinct hyperplanes");
    const std::size_t len = static_cast<std::size_t>(g.dimension() + 1);
    Matrix m = Matrix::from_rows(g.field_ptr(), {h1.coeffs, h2.coeffs}, len);
    return Subspace(g.field_ptr(), len, kernel_basis(m));
}

}  // namespace quadcode
