#include "quadcode/quadric.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "quadcode/series.hpp"

namespace quadcode {

std::string_view to_string(Family f) {
    switch (f) {
        case Family::parabolic: return "parabolic";
        case Family::hyperbolic: return "hyperbolic";
        case Family::elliptic: return "elliptic";
    }
    return "?";
}

std::string_view to_string(BaseKind k) {
    switch (k) {
        case BaseKind::parabolic: return "parabolic";
        case BaseKind::hyperbolic: return "hyperbolic";
        case BaseKind::elliptic: return "elliptic";
        case BaseKind::two_distinct_hyperplanes: return "two_distinct_hyperplanes";
        case BaseKind::repeated_hyperplane: return "repeated_hyperplane";
        case BaseKind::conjugate_hyperplane_pair: return "conjugate_hyperplane_pair";
        case BaseKind::empty_or_degenerate: return "empty_or_degenerate";
    }
    return "?";
}

Family parse_family(std::string_view name) {
    if (name == "parabolic") return Family::parabolic;
    if (name == "hyperbolic") return Family::hyperbolic;
    if (name == "elliptic") return Family::elliptic;
    throw std::invalid_argument("unknown family '" + std::string(name) + "'");
}

// ---------------------------------------------------------------------------
// QuadraticForm

QuadraticForm::QuadraticForm(GeometryPtr geometry, Vector coeffs)
    : geometry_(std::move(geometry)), coeffs_(std::move(coeffs)) {
    if (coeffs_.size() != coefficient_count(geometry_->dimension()))
        throw std::invalid_argument("quadratic form needs (N+1)(N+2)/2 coefficients");
    for (Element a : coeffs_)
        if (!geometry_->field().contains(a)) throw std::invalid_argument("coefficient outside the field");
}

QuadraticForm QuadraticForm::zero(GeometryPtr geometry) {
    const std::size_t n = coefficient_count(geometry->dimension());
    return QuadraticForm(std::move(geometry), Vector(n, 0));
}

std::size_t QuadraticForm::monomial_index(int N, int i, int j) {
    if (i > j) std::swap(i, j);
    if (i < 0 || j > N) throw std::out_of_range("monomial index out of range");
    return static_cast<std::size_t>(i * (N + 1) - i * (i - 1) / 2 + (j - i));
}

Element QuadraticForm::coeff(int i, int j) const { return coeffs_[monomial_index(dimension(), i, j)]; }

QuadraticForm QuadraticForm::with_coeff(int i, int j, Element value) const {
    Vector c = coeffs_;
    c[monomial_index(dimension(), i, j)] = value;
    return QuadraticForm(geometry_, std::move(c));
}

bool QuadraticForm::is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](Element a) { return a == 0; });
}

Element QuadraticForm::evaluate(std::span<const Element> x) const {
    const Field& F = field();
    const int n = dimension() + 1;
    if (x.size() != static_cast<std::size_t>(n)) throw std::invalid_argument("point dimension mismatch");
    Element acc = 0;
    std::size_t k = 0;
    for (int i = 0; i < n; ++i) {
        if (x[i] == 0) {
            k += n - i;
            continue;
        }
        Element row = 0;
        for (int j = i; j < n; ++j, ++k) row = F.add(row, F.mul(coeffs_[k], x[j]));
        acc = F.add(acc, F.mul(row, x[i]));
    }
    return acc;
}

Element QuadraticForm::polar(std::span<const Element> x, std::span<const Element> y) const {
    const Field& F = field();
    const int n = dimension() + 1;
    Element acc = 0;
    std::size_t k = 0;
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j, ++k) {
            const Element a = coeffs_[k];
            if (a == 0) continue;
            if (i == j) {
                const Element xy = F.mul(x[i], y[i]);
                acc = F.add(acc, F.mul(a, F.add(xy, xy)));
            } else {
                acc = F.add(acc, F.mul(a, F.add(F.mul(x[i], y[j]), F.mul(x[j], y[i]))));
            }
        }
    }
    return acc;
}

QuadraticForm QuadraticForm::scaled(Element lambda) const {
    Vector c(coeffs_.size());
    for (std::size_t k = 0; k < c.size(); ++k) c[k] = field().mul(lambda, coeffs_[k]);
    return QuadraticForm(geometry_, std::move(c));
}

QuadraticForm QuadraticForm::operator+(const QuadraticForm& other) const {
    if (other.dimension() != dimension() || other.field().order() != field().order())
        throw std::invalid_argument("adding forms over different geometries");
    Vector c(coeffs_.size());
    for (std::size_t k = 0; k < c.size(); ++k) c[k] = field().add(coeffs_[k], other.coeffs_[k]);
    return QuadraticForm(geometry_, std::move(c));
}

bool QuadraticForm::proportional_to(const QuadraticForm& other) const {
    if (other.dimension() != dimension() || other.field().order() != field().order()) return false;
    if (is_zero() || other.is_zero()) return false;
    std::size_t k = 0;
    while (coeffs_[k] == 0) ++k;
    if (other.coeffs_[k] == 0) return false;
    const Element lambda = field().div(other.coeffs_[k], coeffs_[k]);
    return scaled(lambda) == other;
}

bool QuadraticForm::operator==(const QuadraticForm& other) const {
    return dimension() == other.dimension() && field().order() == other.field().order() && coeffs_ == other.coeffs_;
}

std::string QuadraticForm::to_line() const {
    std::ostringstream os;
    os << field().order() << ' ' << dimension();
    for (Element a : coeffs_) os << ' ' << static_cast<int>(a);
    return os.str();
}

namespace {

std::vector<long> parse_integers(std::string_view line) {
    std::istringstream is{std::string(line)};
    std::vector<long> out;
    long v = 0;
    while (is >> v) out.push_back(v);
    if (!is.eof()) throw std::invalid_argument("form line contains a non-integer token");
    return out;
}

QuadraticForm form_from_values(const std::vector<long>& values, const GeometryPtr& g) {
    const std::size_t n = QuadraticForm::coefficient_count(g->dimension());
    if (values.size() != n + 2)
        throw std::invalid_argument("form line needs q, N and " + std::to_string(n) + " coefficients");
    Vector c(n);
    for (std::size_t k = 0; k < n; ++k) {
        const long a = values[k + 2];
        if (a < 0 || a >= g->q()) throw std::invalid_argument("coefficient outside [0,q)");
        c[k] = static_cast<Element>(a);
    }
    return QuadraticForm(g, std::move(c));
}

}  // namespace

QuadraticForm parse_form_line(std::string_view line) {
    const auto values = parse_integers(line);
    if (values.size() < 2) throw std::invalid_argument("form line needs at least q and N");
    if (values[1] < 0 || values[1] > 64) throw std::invalid_argument("dimension N out of range");
    auto g = make_geometry(make_field_of_order(static_cast<int>(values[0])), static_cast<int>(values[1]));
    return form_from_values(values, g);
}

QuadraticForm parse_form_line(std::string_view line, const GeometryPtr& geometry) {
    const auto values = parse_integers(line);
    if (values.size() < 2) throw std::invalid_argument("form line needs at least q and N");
    if (values[0] != geometry->q() || values[1] != geometry->dimension())
        throw std::invalid_argument("form line does not match the geometry");
    return form_from_values(values, geometry);
}

// ---------------------------------------------------------------------------
// Construction

namespace {

bool binary_form_splits(const Field& F, Element a, Element b, Element c) {
    // a x^2 + b xy + c y^2 has a projective zero: (1:0) iff a == 0, else some (t:1).
    if (a == 0) return true;
    for (int t = 0; t < F.order(); ++t) {
        const Element te = static_cast<Element>(t);
        const Element v = F.add(F.add(F.mul(a, F.mul(te, te)), F.mul(b, te)), c);
        if (v == 0) return true;
    }
    return false;
}

}  // namespace

QuadraticForm standard_form(Family family, const GeometryPtr& geometry) {
    const int N = geometry->dimension();
    QuadraticForm f = QuadraticForm::zero(geometry);
    switch (family) {
        case Family::parabolic: {
            if (N % 2 != 0) throw std::invalid_argument("parabolic standard form needs even N");
            f = f.with_coeff(0, 0, 1);
            for (int i = 1; i + 1 <= N; i += 2) f = f.with_coeff(i, i + 1, 1);
            break;
        }
        case Family::hyperbolic: {
            if (N % 2 == 0) throw std::invalid_argument("hyperbolic standard form needs odd N");
            for (int i = 0; i + 1 <= N; i += 2) f = f.with_coeff(i, i + 1, 1);
            break;
        }
        case Family::elliptic: {
            if (N % 2 == 0) throw std::invalid_argument("elliptic standard form needs odd N");
            const Field& F = geometry->field();
            bool found = false;
            for (int b = 0; b <= 1 && !found; ++b) {
                for (int c = 0; c < F.order() && !found; ++c) {
                    if (!binary_form_splits(F, 1, static_cast<Element>(b), static_cast<Element>(c))) {
                        f = f.with_coeff(0, 0, 1).with_coeff(0, 1, static_cast<Element>(b)).with_coeff(1, 1, static_cast<Element>(c));
                        found = true;
                    }
                }
            }
            if (!found) throw std::logic_error("no irreducible binary quadratic form found");
            for (int i = 2; i + 1 <= N; i += 2) f = f.with_coeff(i, i + 1, 1);
            break;
        }
    }
    return f;
}

QuadraticForm product_form(const GeometryPtr& geometry, std::span<const Element> h1, std::span<const Element> h2) {
    const Field& F = geometry->field();
    const int n = geometry->dimension() + 1;
    if (h1.size() != static_cast<std::size_t>(n) || h2.size() != static_cast<std::size_t>(n))
        throw std::invalid_argument("linear form dimension mismatch");
    Vector c(QuadraticForm::coefficient_count(n - 1), 0);
    std::size_t k = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j, ++k)
            c[k] = (i == j) ? F.mul(h1[i], h2[i]) : F.add(F.mul(h1[i], h2[j]), F.mul(h1[j], h2[i]));
    return QuadraticForm(geometry, std::move(c));
}

QuadraticForm restrict_form(const QuadraticForm& f, const std::vector<Vector>& basis) {
    if (basis.empty()) throw std::invalid_argument("cannot restrict to the empty subspace");
    const int m = static_cast<int>(basis.size()) - 1;
    GeometryPtr g = f.geometry().lower_ptr(m);
    Vector c(QuadraticForm::coefficient_count(m), 0);
    std::size_t k = 0;
    for (int i = 0; i <= m; ++i)
        for (int j = i; j <= m; ++j, ++k) c[k] = (i == j) ? f.evaluate(basis[i]) : f.polar(basis[i], basis[j]);
    return QuadraticForm(std::move(g), std::move(c));
}

// ---------------------------------------------------------------------------
// Point sets

namespace {

struct Term {
    int i;
    int j;
    Element a;
};

std::vector<Term> terms_of(const QuadraticForm& f) {
    std::vector<Term> terms;
    const int n = f.dimension() + 1;
    std::size_t k = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j, ++k)
            if (f.coeffs()[k] != 0) terms.push_back({i, j, f.coeffs()[k]});
    return terms;
}

template <typename Visit>
void for_each_zero(const QuadraticForm& f, Visit&& visit) {
    const Geometry& g = f.geometry();
    const Field& F = g.field();
    const auto terms = terms_of(f);
    const Element* mul = F.mul_table();
    const Element* add = F.add_table();
    const int q = F.order();
    for (std::size_t idx = 0; idx < g.point_count(); ++idx) {
        auto x = g.point(idx);
        Element acc = 0;
        for (const Term& t : terms) acc = add[acc * q + mul[t.a * q + mul[x[t.i] * q + x[t.j]]]];
        if (acc == 0) visit(idx);
    }
}

}  // namespace

std::vector<std::size_t> point_indices(const QuadraticForm& f) {
    std::vector<std::size_t> out;
    for_each_zero(f, [&](std::size_t idx) { out.push_back(idx); });
    return out;
}

std::vector<ProjectivePoint> point_set(const QuadraticForm& f) {
    std::vector<ProjectivePoint> out;
    for_each_zero(f, [&](std::size_t idx) {
        auto p = f.geometry().point(idx);
        out.push_back({Vector(p.begin(), p.end())});
    });
    return out;
}

std::uint64_t point_count(const QuadraticForm& f) {
    std::uint64_t n = 0;
    for_each_zero(f, [&](std::size_t) { ++n; });
    return n;
}

// ---------------------------------------------------------------------------
// Polarity and vertex

Matrix polar_matrix(const QuadraticForm& f) {
    const Field& F = f.field();
    const int n = f.dimension() + 1;
    Matrix B(f.geometry().field_ptr(), n, n);
    std::size_t k = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j, ++k) {
            const Element a = f.coeffs()[k];
            if (i == j) {
                B(i, i) = F.add(a, a);
            } else {
                B(i, j) = a;
                B(j, i) = a;
            }
        }
    return B;
}

Subspace vertex(const QuadraticForm& f) {
    const Field& F = f.field();
    const std::size_t len = static_cast<std::size_t>(f.dimension() + 1);
    std::vector<Vector> radical = kernel_basis(polar_matrix(f));
    if (F.characteristic() != 2 || radical.empty()) return Subspace(f.geometry().field_ptr(), len, radical);

    // On the polar radical, f(sum c_i k_i) = (sum c_i sqrt(f(k_i)))^2, so its
    // zeros there form the kernel of one linear functional.
    Vector roots(radical.size());
    bool all_zero = true;
    for (std::size_t i = 0; i < radical.size(); ++i) {
        roots[i] = F.sqrt_char2(f.evaluate(radical[i]));
        all_zero = all_zero && roots[i] == 0;
    }
    if (all_zero) return Subspace(f.geometry().field_ptr(), len, radical);
    Matrix functional(f.geometry().field_ptr(), 1, radical.size(), roots);
    std::vector<Vector> spanning;
    for (const Vector& c : kernel_basis(functional)) {
        Vector v(len, 0);
        for (std::size_t i = 0; i < radical.size(); ++i) {
            if (c[i] == 0) continue;
            for (std::size_t j = 0; j < len; ++j) v[j] = F.add(v[j], F.mul(c[i], radical[i][j]));
        }
        spanning.push_back(std::move(v));
    }
    return Subspace(f.geometry().field_ptr(), len, spanning);
}

int form_rank(const QuadraticForm& f) { return f.dimension() - vertex(f).dimension(); }

namespace {

// Extends the vertex basis by standard basis vectors to a full basis and
// returns the added vectors (a complement of the vertex).
std::vector<Vector> complement_of(const Subspace& v, std::size_t len, const FieldPtr& field) {
    std::vector<Vector> current = v.basis();
    std::vector<Vector> added;
    for (std::size_t e = 0; e < len && current.size() < len; ++e) {
        Vector unit(len, 0);
        unit[e] = 1;
        auto trial = current;
        trial.push_back(unit);
        if (rank(Matrix::from_rows(field, trial, len)) == trial.size()) {
            current = std::move(trial);
            added.push_back(std::move(unit));
        }
    }
    return added;
}

BaseKind rank_two_kind(const QuadraticForm& f, const Subspace& v) {
    const std::size_t len = static_cast<std::size_t>(f.dimension() + 1);
    const auto comp = complement_of(v, len, f.geometry().field_ptr());
    const Element a = f.evaluate(comp[0]);
    const Element b = f.polar(comp[0], comp[1]);
    const Element c = f.evaluate(comp[1]);
    return binary_form_splits(f.field(), a, b, c) ? BaseKind::two_distinct_hyperplanes
                                                   : BaseKind::conjugate_hyperplane_pair;
}

}  // namespace

std::optional<BaseKind> reducible_kind(const QuadraticForm& f) {
    if (f.is_zero()) throw std::invalid_argument("the zero form has no rank class");
    const Subspace v = vertex(f);
    const int rk = f.dimension() - v.dimension();
    if (rk == 1) return BaseKind::repeated_hyperplane;
    if (rk == 2) return rank_two_kind(f, v);
    return std::nullopt;
}

Family QuadricClass::base_family() const {
    switch (base_kind) {
        case BaseKind::parabolic:
        case BaseKind::repeated_hyperplane: return Family::parabolic;
        case BaseKind::hyperbolic:
        case BaseKind::two_distinct_hyperplanes: return Family::hyperbolic;
        case BaseKind::elliptic:
        case BaseKind::conjugate_hyperplane_pair: return Family::elliptic;
        case BaseKind::empty_or_degenerate: break;
    }
    throw std::logic_error("degenerate class has no base family");
}

QuadricClass classify(const QuadraticForm& f) {
    if (f.is_zero()) throw std::invalid_argument("cannot classify the zero form");
    const int N = f.dimension();
    const int q = f.field().order();
    const Subspace v = vertex(f);
    const int s = v.dimension();
    const int rk = N - s;

    QuadricClass cls;
    cls.vertex_dim = s;
    cls.point_count = point_count(f);
    if (rk == 1) {
        cls.base_kind = BaseKind::repeated_hyperplane;
    } else if (rk == 2) {
        cls.base_kind = rank_two_kind(f, v);
    } else if (rk % 2 == 1) {
        cls.base_kind = BaseKind::parabolic;
    } else if (cls.point_count == cone_size(s, BaseKind::hyperbolic, N, q)) {
        cls.base_kind = BaseKind::hyperbolic;
    } else {
        cls.base_kind = BaseKind::elliptic;
    }
    if (cls.point_count != cone_size(s, cls.base_kind, N, q))
        throw std::logic_error("point count of " + f.to_line() + " matches no cone size");
    return cls;
}

std::uint64_t cone_size(int s, BaseKind kind, int N, int q) {
    if (s < -1 || s >= N) throw std::invalid_argument("vertex dimension out of range");
    const int m = N - s - 1;  // base dimension
    switch (kind) {
        case BaseKind::hyperbolic:
        case BaseKind::two_distinct_hyperplanes: {
            if (m % 2 == 0 || (kind == BaseKind::two_distinct_hyperplanes && m != 1))
                throw std::invalid_argument("hyperbolic base needs odd dimension");
            const int d = (m - 1) / 2;
            // q^{N-1}+...+q^{N-d} + 2q^{N-d-1} + q^{N-d-2}+...+q+1
            return static_cast<std::uint64_t>(power_sum(q, N - d, N - 1) + 2 * ipow(q, N - d - 1) + power_sum(q, 0, N - d - 2));
        }
        case BaseKind::elliptic:
        case BaseKind::conjugate_hyperplane_pair: {
            if (m % 2 == 0 || (kind == BaseKind::conjugate_hyperplane_pair && m != 1))
                throw std::invalid_argument("elliptic base needs odd dimension");
            const int d = (m - 1) / 2;
            // q^{N-1}+...+q^{N-d} + q^{N-d-2}+...+q+1
            return static_cast<std::uint64_t>(power_sum(q, N - d, N - 1) + power_sum(q, 0, N - d - 2));
        }
        case BaseKind::parabolic:
        case BaseKind::repeated_hyperplane: {
            if (m % 2 == 1 || (kind == BaseKind::repeated_hyperplane && m != 0))
                throw std::invalid_argument("parabolic base needs even dimension");
            return static_cast<std::uint64_t>(power_sum(q, 0, N - 1));
        }
        case BaseKind::empty_or_degenerate: break;
    }
    throw std::invalid_argument("no closed form for a degenerate base");
}

std::uint64_t quadric_size(Family family, int N, int q) {
    const std::int64_t Q = q;
    switch (family) {
        case Family::parabolic: {
            if (N % 2) throw std::invalid_argument("parabolic quadric needs even N");
            return static_cast<std::uint64_t>(power_sum(Q, 0, N - 1));
        }
        case Family::hyperbolic: {
            if (N % 2 == 0) throw std::invalid_argument("hyperbolic quadric needs odd N");
            const int n = (N - 1) / 2;
            return static_cast<std::uint64_t>((ipow(Q, n) + 1) * (ipow(Q, n + 1) - 1) / (Q - 1));
        }
        case Family::elliptic: {
            if (N % 2 == 0) throw std::invalid_argument("elliptic quadric needs odd N");
            const int n = (N - 1) / 2;
            return static_cast<std::uint64_t>((ipow(Q, n + 1) + 1) * (ipow(Q, n) - 1) / (Q - 1));
        }
    }
    return 0;
}

// ---------------------------------------------------------------------------
// Tangency, nucleus and sections

Hyperplane tangent_hyperplane(const QuadraticForm& f, const ProjectivePoint& p) {
    if (f.evaluate(p.coords) != 0) throw std::domain_error("point is not on the quadric");
    const Vector bp = polar_matrix(f).apply(p.coords);
    if (std::all_of(bp.begin(), bp.end(), [](Element e) { return e == 0; }))
        throw std::domain_error("polar image of the point vanishes");
    return make_hyperplane(f.field(), bp);
}

ProjectivePoint nucleus(const QuadraticForm& f) {
    if (f.field().characteristic() != 2) throw std::domain_error("a nucleus exists only for even q");
    if (f.dimension() % 2 != 0) throw std::domain_error("a nucleus needs even N");
    const auto radical = kernel_basis(polar_matrix(f));
    if (radical.size() != 1) throw std::domain_error("polar radical is not a single point");
    if (f.evaluate(radical[0]) == 0) throw std::domain_error("form is singular");
    return make_point(f.field(), radical[0]);
}

std::vector<Hyperplane> hyperplanes_through(const Subspace& s, const Geometry& g) {
    const std::size_t len = static_cast<std::size_t>(g.dimension() + 1);
    if (s.dimension() != g.dimension() - 2) throw std::invalid_argument("subspace must have codimension 2");
    const auto dual = kernel_basis(Matrix::from_rows(g.field_ptr(), s.basis(), len));
    const Field& F = g.field();
    std::vector<Hyperplane> out;
    for (int t = 0; t < F.order(); ++t) {
        Vector h(len);
        for (std::size_t i = 0; i < len; ++i) h[i] = F.add(dual[0][i], F.mul(static_cast<Element>(t), dual[1][i]));
        out.push_back(make_hyperplane(F, h));
    }
    out.push_back(make_hyperplane(F, dual[1]));
    return out;
}

QuadricClass classify_on(const QuadraticForm& f, const Subspace& s) {
    return classify(restrict_form(f, s.basis()));
}

QuadricClass classify_section(const QuadraticForm& f, const Hyperplane& h) {
    const std::size_t len = static_cast<std::size_t>(f.dimension() + 1);
    Matrix row = Matrix::from_rows(f.geometry().field_ptr(), {h.coeffs}, len);
    return classify(restrict_form(f, kernel_basis(row)));
}

SectionProfile section_profile(const QuadraticForm& f, const Subspace& s) {
    if (s.dimension() != f.dimension() - 2) throw std::invalid_argument("section profile needs a codimension-2 subspace");
    SectionProfile out;
    out.hyperplanes = hyperplanes_through(s, f.geometry());
    for (const auto& h : out.hyperplanes) {
        const QuadricClass c = classify_section(f, h);
        if (c.singular()) {
            ++out.tangent_count;
        } else {
            switch (c.base_kind) {
                case BaseKind::hyperbolic:
                case BaseKind::two_distinct_hyperplanes: ++out.hyperbolic_count; break;
                case BaseKind::elliptic:
                case BaseKind::conjugate_hyperplane_pair: ++out.elliptic_count; break;
                default: ++out.parabolic_count; break;
            }
        }
        out.sections.push_back(c);
    }
    return out;
}

}  // namespace quadcode
