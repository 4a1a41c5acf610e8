#include "amitsur/ring.hpp"

#include <algorithm>
#include <sstream>

#include "amitsur/errors.hpp"
#include "amitsur/parallel.hpp"

namespace amitsur {

FiniteRing::FiniteRing(std::uint64_t modulus, std::size_t rank, std::vector<std::vector<Term>> products,
                       Vec one, std::string name)
    : zn_(modulus), rank_(rank), products_(std::move(products)), one_(std::move(one)), name_(std::move(name)) {
    if (rank_ == 0) throw InvalidInput("ring rank must be positive");
    if (products_.size() != rank_ * (rank_ + 1) / 2) throw InvalidInput("structure table has wrong size");
    if (one_.size() != rank_) throw InvalidInput("unit vector has wrong length");
    for (auto& c : one_) c = Coeff(c % modulus);
}

RingPtr FiniteRing::from_structure_constants(std::uint64_t modulus, std::size_t rank,
                                             const std::vector<Coeff>& constants, Vec one, std::string name) {
    if (constants.size() != rank * rank * rank) throw InvalidInput("structure constants must be rank^3 long");
    auto at = [&](std::size_t i, std::size_t j, std::size_t k) { return Coeff(constants[(i * rank + j) * rank + k] % modulus); };
    std::vector<std::vector<Term>> products;
    products.reserve(rank * (rank + 1) / 2);
    for (std::size_t i = 0; i < rank; ++i)
        for (std::size_t j = i; j < rank; ++j) {
            std::vector<Term> terms;
            for (std::size_t k = 0; k < rank; ++k) {
                if (at(i, j, k) != at(j, i, k))
                    throw InvalidInput("structure constants are not commutative at (" + std::to_string(i) + "," +
                                       std::to_string(j) + ")");
                if (at(i, j, k) != 0) terms.push_back({std::uint32_t(k), at(i, j, k)});
            }
            products.push_back(std::move(terms));
        }
    return std::make_shared<FiniteRing>(modulus, rank, std::move(products), std::move(one), std::move(name));
}

std::size_t FiniteRing::slot(std::size_t i, std::size_t j) const {
    if (i > j) std::swap(i, j);
    // Packed upper triangle, row i starts after sum_{t<i} (rank - t) entries.
    return i * rank_ - i * (i - 1) / 2 + (j - i);
}

const std::vector<Term>& FiniteRing::product(std::size_t i, std::size_t j) const { return products_[slot(i, j)]; }

void FiniteRing::multiply(std::span<const Coeff> a, std::span<const Coeff> b, std::span<Coeff> out) const {
    std::fill(out.begin(), out.end(), 0);
    const std::uint64_t n = zn_.modulus();
    // Accumulate in 64 bits and reduce lazily.
    thread_local std::vector<std::uint64_t> acc;
    acc.assign(rank_, 0);
    std::size_t pending = 0;
    const std::size_t flush_every = std::max<std::size_t>(1, (std::uint64_t(1) << 62) / (n * n));
    for (std::size_t i = 0; i < rank_; ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < rank_; ++j) {
            if (b[j] == 0) continue;
            const std::uint64_t ab = (std::uint64_t(a[i]) * b[j]) % n;
            for (const Term& t : product(i, j)) acc[t.index] += ab * t.coeff;
            if (++pending >= flush_every) {
                for (auto& x : acc) x %= n;
                pending = 0;
            }
        }
    }
    for (std::size_t k = 0; k < rank_; ++k) out[k] = Coeff(acc[k] % n);
}

Vec FiniteRing::multiply(std::span<const Coeff> a, std::span<const Coeff> b) const {
    Vec out(rank_);
    multiply(a, b, out);
    return out;
}

Matrix FiniteRing::multiplication_matrix(std::span<const Coeff> x) const {
    Matrix m(rank_, rank_);
    for (std::size_t i = 0; i < rank_; ++i) {
        if (x[i] == 0) continue;
        for (std::size_t j = 0; j < rank_; ++j)
            for (const Term& t : product(i, j)) m(t.index, j) = zn_.add(m(t.index, j), zn_.mul(x[i], t.coeff));
    }
    return m;
}

std::optional<std::uint64_t> FiniteRing::element_count() const {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < rank_; ++i) {
        if (count > (std::uint64_t(1) << 62) / modulus()) return std::nullopt;
        count *= modulus();
    }
    return count;
}

void FiniteRing::validate() const {
    auto basis = [&](std::size_t i) {
        Vec v(rank_, 0);
        v[i] = 1;
        return v;
    };
    for (std::size_t i = 0; i < rank_; ++i) {
        Vec e = basis(i);
        if (multiply(one_, e) != e) throw InvalidInput(name_ + ": unit law fails on basis element " + std::to_string(i));
    }
    for (std::size_t i = 0; i < rank_; ++i)
        for (std::size_t j = 0; j < rank_; ++j) {
            Vec ij = multiply(basis(i), basis(j));
            for (std::size_t k = 0; k < rank_; ++k) {
                Vec left = multiply(ij, basis(k));
                Vec right = multiply(basis(i), multiply(basis(j), basis(k)));
                if (left != right)
                    throw InvalidInput(name_ + ": associativity fails on basis triple (" + std::to_string(i) + "," +
                                       std::to_string(j) + "," + std::to_string(k) + ")");
            }
        }
}

RingElement::RingElement(RingPtr ring, Vec coeffs) : ring_(std::move(ring)), coeffs_(std::move(coeffs)) {
    if (!ring_) throw InvalidInput("element without ring");
    if (coeffs_.size() != ring_->rank())
        throw InvalidInput("element has " + std::to_string(coeffs_.size()) + " coefficients, ring rank is " +
                           std::to_string(ring_->rank()));
    for (auto& c : coeffs_) c = Coeff(c % ring_->modulus());
}

RingElement RingElement::zero(RingPtr ring) {
    Vec v(ring->rank(), 0);
    return {std::move(ring), std::move(v)};
}

RingElement RingElement::one(RingPtr ring) {
    Vec v = ring->one();
    return {std::move(ring), std::move(v)};
}

RingElement RingElement::basis(RingPtr ring, std::size_t i) {
    Vec v(ring->rank(), 0);
    v.at(i) = 1;
    return {std::move(ring), std::move(v)};
}

RingElement RingElement::from_ints(RingPtr ring, const std::vector<std::int64_t>& values) {
    if (values.size() != ring->rank())
        throw InvalidInput("expected " + std::to_string(ring->rank()) + " coefficients, got " +
                           std::to_string(values.size()));
    Vec v;
    v.reserve(values.size());
    for (auto x : values) v.push_back(ring->zn().reduce(x));
    return {std::move(ring), std::move(v)};
}

bool RingElement::is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](Coeff c) { return c == 0; });
}

bool RingElement::is_one() const { return coeffs_ == ring_->one(); }

void RingElement::check_same_ring(const RingElement& o) const {
    if (ring_ != o.ring_) throw InvalidInput("elements of different rings (" + ring_->name() + " vs " + o.ring_->name() + ")");
}

RingElement RingElement::operator+(const RingElement& o) const {
    check_same_ring(o);
    Vec v(coeffs_.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = ring_->zn().add(coeffs_[i], o.coeffs_[i]);
    return {ring_, std::move(v)};
}

RingElement RingElement::operator-(const RingElement& o) const {
    check_same_ring(o);
    Vec v(coeffs_.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = ring_->zn().sub(coeffs_[i], o.coeffs_[i]);
    return {ring_, std::move(v)};
}

RingElement RingElement::operator-() const {
    Vec v(coeffs_.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = ring_->zn().neg(coeffs_[i]);
    return {ring_, std::move(v)};
}

RingElement RingElement::operator*(const RingElement& o) const {
    check_same_ring(o);
    return {ring_, ring_->multiply(coeffs_, o.coeffs_)};
}

RingElement RingElement::scaled(Coeff c) const {
    Vec v(coeffs_.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = ring_->zn().mul(c % ring_->modulus(), coeffs_[i]);
    return {ring_, std::move(v)};
}

bool RingElement::operator==(const RingElement& o) const { return ring_ == o.ring_ && coeffs_ == o.coeffs_; }

std::strong_ordering RingElement::operator<=>(const RingElement& o) const {
    check_same_ring(o);
    return coeffs_ <=> o.coeffs_;
}

std::string RingElement::to_string() const {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < coeffs_.size(); ++i) os << (i ? "," : "") << coeffs_[i];
    os << ']';
    return os.str();
}

RingElement power(const RingElement& x, std::uint64_t e) {
    RingElement result = RingElement::one(x.ring());
    RingElement base = x;
    while (e) {
        if (e & 1) result = result * base;
        base = base * base;
        e >>= 1;
    }
    return result;
}

std::optional<RingElement> try_invert(const RingElement& x) {
    const FiniteRing& r = *x.ring();
    auto y = solve(r.zn(), r.multiplication_matrix(x.coeffs()), r.one());
    if (!y) return std::nullopt;
    return RingElement(x.ring(), std::move(*y));
}

bool is_unit(const RingElement& x) {
    const FiniteRing& r = *x.ring();
    return is_bijective(r.zn(), r.multiplication_matrix(x.coeffs()));
}

Vec element_at(const FiniteRing& ring, std::uint64_t index) {
    Vec v(ring.rank(), 0);
    for (std::size_t i = ring.rank(); i-- > 0;) {
        v[i] = Coeff(index % ring.modulus());
        index /= ring.modulus();
    }
    return v;
}

void require_enumerable(const FiniteRing& ring, const Limits& limits) {
    auto count = ring.element_count();
    if (!count || *count > limits.element_cap)
        throw RingTooLarge(ring.name() + " has " + std::to_string(ring.modulus()) + "^" + std::to_string(ring.rank()) +
                           " elements, above the cap of " + std::to_string(limits.element_cap));
}

std::vector<RingElement> enumerate_units(const RingPtr& ring, const Limits& limits) {
    require_enumerable(*ring, limits);
    auto coeffs = parallel_collect<Vec>(*ring->element_count(), limits.jobs, [&](std::uint64_t i) -> std::optional<Vec> {
        Vec v = element_at(*ring, i);
        if (!is_bijective(ring->zn(), ring->multiplication_matrix(v))) return std::nullopt;
        return v;
    });
    std::vector<RingElement> out;
    out.reserve(coeffs.size());
    for (auto& v : coeffs) out.emplace_back(ring, std::move(v));
    return out;
}

std::vector<RingElement> enumerate_elements(const RingPtr& ring, const Limits& limits) {
    require_enumerable(*ring, limits);
    std::vector<RingElement> out;
    const std::uint64_t count = *ring->element_count();
    out.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i) out.emplace_back(ring, element_at(*ring, i));
    return out;
}

RingHom::RingHom(RingPtr source, RingPtr target, Matrix images)
    : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)) {
    if (images_.rows() != target_->rank() || images_.cols() != source_->rank())
        throw InvalidInput("ring map matrix has wrong shape");
    if (source_->modulus() != target_->modulus()) throw InvalidInput("ring map between different characteristics");
}

RingElement RingHom::operator()(const RingElement& x) const {
    if (x.ring() != source_) throw InvalidInput("ring map applied outside its source (" + x.ring()->name() + ")");
    return {target_, apply(x.coeffs())};
}

Vec RingHom::apply(std::span<const Coeff> x) const { return amitsur::apply(target_->zn(), images_, x); }

bool RingHom::is_unital() const { return apply(source_->one()) == target_->one(); }

bool RingHom::is_multiplicative() const {
    const std::size_t r = source_->rank();
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = i; j < r; ++j) {
            Vec ei(r, 0), ej(r, 0);
            ei[i] = 1;
            ej[j] = 1;
            Vec lhs = apply(source_->multiply(ei, ej));
            Vec rhs = target_->multiply(images_.column(i), images_.column(j));
            if (lhs != rhs) return false;
        }
    return true;
}

bool RingHom::operator==(const RingHom& o) const {
    return source_ == o.source_ && target_ == o.target_ && images_ == o.images_;
}

RingHom compose(const RingHom& g, const RingHom& f) {
    if (f.target() != g.source()) throw InvalidInput("composition of non-composable ring maps");
    return {f.source(), g.target(), multiply(g.target()->zn(), g.matrix(), f.matrix())};
}

RingHom identity_hom(const RingPtr& ring) { return {ring, ring, Matrix::identity(ring->rank())}; }

namespace {

std::string poly_name(std::uint64_t n, const Vec& f) {
    std::ostringstream os;
    os << "Z/" << n << "[x]/(";
    bool first = true;
    for (std::size_t i = f.size(); i-- > 0;) {
        if (f[i] == 0) continue;
        if (!first) os << '+';
        first = false;
        if (f[i] != 1 || i == 0) os << f[i];
        if (i >= 1) os << 'x';
        if (i >= 2) os << '^' << i;
    }
    os << ')';
    return os.str();
}

}  // namespace

RingPtr make_quotient_ring(std::uint64_t modulus, const std::vector<std::int64_t>& poly) {
    Zn zn(modulus);
    if (poly.size() < 2) throw InvalidInput("quotient polynomial must have degree >= 1");
    Vec f;
    for (auto c : poly) f.push_back(zn.reduce(c));
    auto lead_inv = zn.inverse(f.back());
    if (!lead_inv) throw InvalidInput("quotient polynomial is not monic: leading coefficient is not a unit mod " + std::to_string(modulus));
    for (auto& c : f) c = zn.mul(*lead_inv, c);
    const std::size_t deg = f.size() - 1;

    // x^k reduced mod f for k < 2*deg - 1.
    std::vector<Vec> powers;
    Vec cur(deg, 0);
    cur[0] = deg == 0 ? 0 : 1;
    for (std::size_t k = 0; k + 1 < 2 * deg; ++k) {
        powers.push_back(cur);
        // multiply by x: shift, then fold x^deg = -sum f_i x^i.
        Vec next(deg, 0);
        const Coeff top = cur[deg - 1];
        for (std::size_t i = deg - 1; i > 0; --i) next[i] = cur[i - 1];
        next[0] = 0;
        for (std::size_t i = 0; i < deg; ++i) next[i] = zn.sub(next[i], zn.mul(top, f[i]));
        cur = std::move(next);
    }
    std::vector<std::vector<Term>> products;
    for (std::size_t i = 0; i < deg; ++i)
        for (std::size_t j = i; j < deg; ++j) {
            std::vector<Term> terms;
            const Vec& p = powers[i + j];
            for (std::size_t k = 0; k < deg; ++k)
                if (p[k] != 0) terms.push_back({std::uint32_t(k), p[k]});
            products.push_back(std::move(terms));
        }
    Vec one(deg, 0);
    one[0] = 1;
    return std::make_shared<FiniteRing>(modulus, deg, std::move(products), std::move(one), poly_name(modulus, f));
}

RingPtr make_product_ring(const RingPtr& a, const RingPtr& b) {
    if (a->modulus() != b->modulus()) throw InvalidInput("product of rings with different moduli");
    const std::size_t ra = a->rank(), rb = b->rank(), r = ra + rb;
    std::vector<std::vector<Term>> products;
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = i; j < r; ++j) {
            std::vector<Term> terms;
            if (j < ra) {
                terms = a->product(i, j);
            } else if (i >= ra) {
                for (Term t : b->product(i - ra, j - ra)) terms.push_back({std::uint32_t(t.index + ra), t.coeff});
            }
            products.push_back(std::move(terms));
        }
    Vec one = a->one();
    one.insert(one.end(), b->one().begin(), b->one().end());
    return std::make_shared<FiniteRing>(a->modulus(), r, std::move(products), std::move(one),
                                        "(" + a->name() + ")x(" + b->name() + ")");
}

}  // namespace amitsur
