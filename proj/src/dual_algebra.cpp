#include "amitsur/dual_algebra.hpp"

#include <sstream>

#include "amitsur/errors.hpp"

namespace amitsur {

namespace {

using boost::multiprecision::cpp_int;

bool all_zero(std::span<const Coeff> v) {
    return std::all_of(v.begin(), v.end(), [](Coeff c) { return c == 0; });
}

Vec unit_vector(std::size_t len, std::size_t index) {
    Vec v(len, 0);
    v[index] = 1;
    return v;
}

// R-one placed in block `block` of a vector of `blocks` R-coordinates.
Vec r_one_at(const FiniteRing& base, std::size_t blocks, std::size_t block) {
    Vec v(blocks * base.rank(), 0);
    std::copy(base.one().begin(), base.one().end(), v.begin() + std::ptrdiff_t(block * base.rank()));
    return v;
}

std::span<const Coeff> block(std::span<const Coeff> v, std::size_t i, std::size_t rr) { return v.subspan(i * rr, rr); }

// out += r * v, blockwise.
void add_scaled(const FiniteRing& base, std::span<const Coeff> r, std::span<const Coeff> v, std::span<Coeff> out) {
    const std::size_t rr = base.rank();
    const Zn& zn = base.zn();
    Vec tmp(rr);
    for (std::size_t b = 0; b * rr < v.size(); ++b) {
        auto vb = block(v, b, rr);
        if (all_zero(vb)) continue;
        base_mul_into(base, r, vb, tmp);
        for (std::size_t k = 0; k < rr; ++k) out[b * rr + k] = Coeff(zn.add(out[b * rr + k], tmp[k]));
    }
}

void add_times(const Zn& zn, Coeff c, std::span<const Coeff> v, std::span<Coeff> out) { zn.axpy(c, v, out); }

// Base-coordinate arithmetic in S.
struct SOps {
    const Extension& e;
    const FiniteRing& r;
    std::size_t d, rr;

    explicit SOps(const Extension& ext) : e(ext), r(*ext.base()), d(ext.degree()), rr(ext.base_rank()) {}

    Vec mul(std::span<const Coeff> a, std::span<const Coeff> b) const {
        return e.to_base_coords(e.top()->multiply(e.from_base_coords(a), e.from_base_coords(b)));
    }
    Vec scale(std::span<const Coeff> rscalar, std::span<const Coeff> v) const {
        Vec out(v.size(), 0);
        add_scaled(r, rscalar, v, out);
        return out;
    }
    Vec basis(std::size_t i) const { return r_one_at(r, d, i); }
    // b_j* . s : x -> b_j*(s x), in dual-basis coordinates.
    Vec dual_act(std::span<const Coeff> f, std::span<const Coeff> s) const {
        Vec out(d * rr, 0), tmp(rr);
        for (std::size_t l = 0; l < d; ++l) {
            Vec sl = mul(s, basis(l));
            for (std::size_t j = 0; j < d; ++j) {
                auto fj = block(f, j, rr);
                if (all_zero(fj)) continue;
                base_mul_into(r, fj, block(sl, j, rr), tmp);
                for (std::size_t k = 0; k < rr; ++k) out[l * rr + k] = Coeff(r.zn().add(out[l * rr + k], tmp[k]));
            }
        }
        return out;
    }
    // phi(s) for phi in End coordinates (block i*d + j is the (i, j) entry).
    Vec end_apply(std::span<const Coeff> phi, std::span<const Coeff> s) const {
        Vec out(d * rr, 0), tmp(rr);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) {
                auto pij = block(phi, i * d + j, rr);
                auto sj = block(s, j, rr);
                if (all_zero(pij) || all_zero(sj)) continue;
                base_mul_into(r, pij, sj, tmp);
                for (std::size_t k = 0; k < rr; ++k) out[i * rr + k] = Coeff(r.zn().add(out[i * rr + k], tmp[k]));
            }
        return out;
    }
    // The endomorphism whose value on b_q is column(q).
    Vec end_from_columns(const std::vector<Vec>& columns) const {
        Vec out(d * d * rr, 0);
        for (std::size_t q = 0; q < d; ++q)
            for (std::size_t i = 0; i < d; ++i)
                std::copy_n(columns[q].begin() + std::ptrdiff_t(i * rr), rr, out.begin() + std::ptrdiff_t((i * d + q) * rr));
        return out;
    }
    // f (x) t as the endomorphism x -> f(x) t.
    Vec end_from_dual_tensor(std::span<const Coeff> f, std::span<const Coeff> t) const {
        Vec out(d * d * rr, 0), tmp(rr);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) {
                auto fj = block(f, j, rr);
                auto ti = block(t, i, rr);
                if (all_zero(fj) || all_zero(ti)) continue;
                base_mul_into(r, fj, ti, tmp);
                std::copy(tmp.begin(), tmp.end(), out.begin() + std::ptrdiff_t((i * d + j) * rr));
            }
        return out;
    }
};

// x = sum c (x^1 (x) ... (x) x^n) over the base-coordinate basis, with the
// R-scalar of each basis element carried by the first slot.
struct PureTerm {
    Coeff c;
    std::vector<Vec> slots;  // base coordinates in S
};

std::vector<PureTerm> expand(const AmitsurComplex& c, const RingElement& x) {
    const int n = c.level_of(x.ring());
    const Vec rc = c.tower()->to_base_coords(n, x.coeffs());
    const FiniteRing& base = *c.ext()->base();
    const std::size_t rr = base.rank(), d = c.ext()->degree();
    std::vector<PureTerm> out;
    for (std::size_t idx = 0; idx < rc.size(); ++idx) {
        if (!rc[idx]) continue;
        const std::size_t k = idx % rr;
        std::size_t flat = idx / rr;
        std::vector<Vec> slots(static_cast<std::size_t>(n));
        for (int s = n; s-- > 0; flat /= d) slots[std::size_t(s)] = r_one_at(base, d, flat % d);
        Vec first(d * rr, 0);
        std::size_t b0 = 0;
        for (std::size_t b = 0; b < d; ++b)
            if (!all_zero(block(slots[0], b, rr))) b0 = b;
        first[b0 * rr + k] = 1;
        slots[0] = std::move(first);
        out.push_back({rc[idx], std::move(slots)});
    }
    return out;
}

Vec norm_inverse_coords(const NormalBasisCoring& C) {
    auto inv = try_invert(C.twist().norm());
    if (!inv) throw InvalidInput("twist norm is not invertible");
    return C.complex()->ext()->to_base_coords(inv->coeffs());
}

void require_azumaya(const NormalBasisCoring& C, const char* what) {
    if (!C.twist().is_cocycle())
        throw InvalidInput(std::string(what) + " needs a unit 2-cocycle twist, got " + C.twist().u().to_string());
}

}  // namespace

RAlgebra::RAlgebra(RingPtr base, std::size_t rank, std::vector<Vec> table, Vec one, std::string name)
    : base_(std::move(base)), rank_(rank), table_(std::move(table)), one_(std::move(one)), name_(std::move(name)) {
    if (table_.size() != rank_ * rank_) throw InvalidInput("algebra table must have rank^2 entries");
    for (const auto& t : table_)
        if (t.size() != zn_rank()) throw InvalidInput("algebra table entry of wrong length");
    if (one_.size() != zn_rank()) throw InvalidInput("algebra unit of wrong length");
}

Vec RAlgebra::multiply(std::span<const Coeff> x, std::span<const Coeff> y) const {
    const std::size_t rr = base_->rank();
    Vec out(zn_rank(), 0), r(rr);
    for (std::size_t p = 0; p < rank_; ++p) {
        auto xp = block(x, p, rr);
        if (all_zero(xp)) continue;
        for (std::size_t q = 0; q < rank_; ++q) {
            auto yq = block(y, q, rr);
            if (all_zero(yq)) continue;
            base_mul_into(*base_, xp, yq, r);
            add_scaled(*base_, r, product(p, q), out);
        }
    }
    return out;
}

Vec RAlgebra::basis(std::size_t p) const { return r_one_at(*base_, rank_, p); }

bool RAlgebra::is_associative() const {
    for (std::size_t p = 0; p < rank_; ++p)
        for (std::size_t q = 0; q < rank_; ++q)
            for (std::size_t r = 0; r < rank_; ++r)
                if (multiply(product(p, q), basis(r)) != multiply(basis(p), product(q, r))) return false;
    return true;
}

bool RAlgebra::is_unit_element(std::span<const Coeff> e) const {
    for (std::size_t p = 0; p < rank_; ++p) {
        Vec b = basis(p);
        if (multiply(e, b) != b || multiply(b, e) != b) return false;
    }
    return true;
}

RAlgebra RAlgebra::opposite() const {
    std::vector<Vec> t(table_.size());
    for (std::size_t p = 0; p < rank_; ++p)
        for (std::size_t q = 0; q < rank_; ++q) t[p * rank_ + q] = product(q, p);
    return {base_, rank_, std::move(t), one_, name_ + "^op"};
}

RAlgebra algebra_of(const Extension& ext) {
    const std::size_t d = ext.degree();
    std::vector<Vec> t;
    for (std::size_t p = 0; p < d; ++p)
        for (std::size_t q = 0; q < d; ++q) t.push_back(ext.basis_product(p, q));
    return {ext.base(), d, std::move(t), ext.one_coords(), ext.top()->name()};
}

RAlgebra endomorphism_algebra(const Extension& ext) {
    const std::size_t d = ext.degree(), m = d * d;
    const FiniteRing& r = *ext.base();
    std::vector<Vec> t;
    for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b)
            for (std::size_t c = 0; c < d; ++c)
                for (std::size_t e = 0; e < d; ++e)
                    t.push_back(b == c ? r_one_at(r, m, a * d + e) : Vec(m * r.rank(), 0));
    Vec one(m * r.rank(), 0);
    for (std::size_t i = 0; i < d; ++i) add_scaled(r, r.one(), r_one_at(r, m, i * d + i), one);
    return {ext.base(), m, std::move(t), std::move(one), "End(" + ext.name() + ")"};
}

RAlgebra twisted_algebra(const NormalBasisCoring& C, Side side) {
    require_azumaya(C, "twisted endomorphism algebra");
    const AmitsurComplex& c = *C.complex();
    SOps s(*c.ext());
    const std::size_t m = s.d * s.d;
    const Zn& zn = s.r.zn();
    const auto terms = expand(c, C.twist().u());
    std::vector<Vec> t;
    for (std::size_t p = 0; p < m; ++p)
        for (std::size_t q = 0; q < m; ++q) {
            const Vec phi = r_one_at(s.r, m, p), psi = r_one_at(s.r, m, q);
            std::vector<Vec> cols;
            for (std::size_t col = 0; col < s.d; ++col) {
                const Vec x = s.basis(col);
                Vec acc(s.d * s.rr, 0);
                for (const auto& term : terms) {
                    const Vec &u1 = term.slots[0], &u2 = term.slots[1], &u3 = term.slots[2];
                    Vec v = side == Side::right ? s.mul(u3, s.end_apply(phi, s.mul(u2, s.end_apply(psi, s.mul(u1, x)))))
                                                : s.mul(u1, s.end_apply(psi, s.mul(u2, s.end_apply(phi, s.mul(u3, x)))));
                    add_times(zn, term.c, v, acc);
                }
                cols.push_back(std::move(acc));
            }
            t.push_back(s.end_from_columns(cols));
        }
    return {c.ext()->base(), m, std::move(t), twisted_unit(C),
            std::string("End(") + c.ext()->name() + ")_u " + (side == Side::right ? "right" : "left")};
}

Vec twisted_unit(const NormalBasisCoring& C) {
    SOps s(*C.complex()->ext());
    const Vec ninv = norm_inverse_coords(C);
    std::vector<Vec> cols;
    for (std::size_t q = 0; q < s.d; ++q) cols.push_back(s.mul(ninv, s.basis(q)));
    return s.end_from_columns(cols);
}

Vec ambient_multiply(const Extension& ext, std::span<const Coeff> x, std::span<const Coeff> y) {
    const FiniteRing& r = *ext.base();
    const std::size_t d = ext.degree(), rr = r.rank();
    Vec out(d * d * d * rr, 0), xy(rr), tmp(rr);
    for (std::size_t a = 0; a < d; ++a)
        for (std::size_t j = 0; j < d; ++j)
            for (std::size_t i = 0; i < d; ++i) {
                auto xb = block(x, (a * d + j) * d + i, rr);
                if (all_zero(xb)) continue;
                // (b_a (x) E_ij)(b_b (x) E_jl) = b_a b_b (x) E_il
                for (std::size_t b = 0; b < d; ++b)
                    for (std::size_t l = 0; l < d; ++l) {
                        auto yb = block(y, (b * d + l) * d + j, rr);
                        if (all_zero(yb)) continue;
                        base_mul_into(r, xb, yb, xy);
                        const Vec& ab = ext.basis_product(a, b);
                        for (std::size_t c = 0; c < d; ++c) {
                            auto beta = block(ab, c, rr);
                            if (all_zero(beta)) continue;
                            base_mul_into(r, xy, beta, tmp);
                            const std::size_t o = ((c * d + l) * d + i) * rr;
                            for (std::size_t k = 0; k < rr; ++k) out[o + k] = Coeff(r.zn().add(out[o + k], tmp[k]));
                        }
                    }
            }
    return out;
}

Vec ambient_one(const Extension& ext) {
    const std::size_t d = ext.degree(), rr = ext.base_rank();
    Vec out(d * d * d * rr, 0);
    for (std::size_t c = 0; c < d; ++c)
        for (std::size_t i = 0; i < d; ++i)
            std::copy_n(ext.one_coords().begin() + std::ptrdiff_t(c * rr), rr,
                        out.begin() + std::ptrdiff_t(((c * d + i) * d + i) * rr));
    return out;
}

Matrix unit_embedding_matrix(const Extension& ext) {
    const std::size_t d = ext.degree(), rr = ext.base_rank();
    const FiniteRing& r = *ext.base();
    Matrix out(d * d * d * rr, d * d * rr);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            for (std::size_t k = 0; k < rr; ++k) {
                Vec rk(rr, 0), block(rr, 0);
                rk[k] = 1;
                for (std::size_t a = 0; a < d; ++a) {
                    base_mul_into(r, std::span<const Coeff>(ext.one_coords()).subspan(a * rr, rr), rk, block);
                    for (std::size_t t = 0; t < rr; ++t) out(((a * d + j) * d + i) * rr + t, (i * d + j) * rr + k) = block[t];
                }
            }
    return out;
}

namespace {

// x -> x_2 u_4 - x_1 u_3, from S (x) S* (x) S into S (x) S (x) S* (x) S, where
// s^1 (x) s^2 (x) s^3 (x) s^4 acts on p (x) q (x) f (x) t as
// s^1 p (x) s^2 q (x) f.s^3 (x) s^4 t.
Matrix descent_condition(const AmitsurComplex& c, const RingElement& u) {
    SOps s(*c.ext());
    const std::size_t d = s.d, rr = s.rr;
    const Zn& zn = s.r.zn();
    const auto terms = expand(c, u);
    Matrix out(d * d * d * d * rr, d * d * d * rr);
    for (std::size_t a = 0; a < d; ++a)
        for (std::size_t j = 0; j < d; ++j)
            for (std::size_t i = 0; i < d; ++i)
                for (std::size_t k = 0; k < rr; ++k) {
                    Vec A(d * rr, 0);
                    A[a * rr + k] = 1;
                    const Vec J = s.basis(j), I = s.basis(i);
                    Vec col(out.rows(), 0);
                    for (const auto& term : terms) {
                        const Vec &x = term.slots[0], &y = term.slots[1], &z = term.slots[2];
                        Vec plus = pure_tensor(s.r, s.r.one(), {s.mul(x, A), y, s.dual_act(J, z), I});
                        Vec minus = pure_tensor(s.r, s.r.one(), {x, s.mul(y, A), J, s.mul(z, I)});
                        add_times(zn, term.c, plus, col);
                        add_times(zn, Coeff(zn.neg(term.c)), minus, col);
                    }
                    out.set_column((((a * d + j) * d + i) * rr) + k, col);
                }
    return out;
}

}  // namespace

Matrix gamma_matrix(const NormalBasisCoring& C) {
    require_azumaya(C, "gamma");
    const AmitsurComplex& c = *C.complex();
    SOps s(*c.ext());
    const std::size_t d = s.d, rr = s.rr;
    const Zn& zn = s.r.zn();
    const auto terms = expand(c, C.twist().u());
    Matrix out(d * d * d * rr, d * d * rr);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            for (std::size_t k = 0; k < rr; ++k) {
                const Vec rk = unit_vector(rr, k), J = s.basis(j), I = s.basis(i);
                Vec col(out.rows(), 0);
                // r_k E_ij -> sum r_k u^1 (x) (b_j* . u^2) (x) u^3 b_i
                for (const auto& term : terms) {
                    const Vec &x = term.slots[0], &y = term.slots[1], &z = term.slots[2];
                    add_times(zn, term.c, pure_tensor(s.r, s.r.one(), {s.scale(rk, x), s.dual_act(J, y), s.mul(z, I)}), col);
                }
                out.set_column((i * d + j) * rr + k, col);
            }
    return out;
}

Matrix gamma_inverse_matrix(const NormalBasisCoring& C) {
    require_azumaya(C, "gamma inverse");
    const AmitsurComplex& c = *C.complex();
    SOps s(*c.ext());
    const std::size_t d = s.d, rr = s.rr;
    const Zn& zn = s.r.zn();
    const auto terms = expand(c, *C.twist().inverse());
    Matrix out(d * d * rr, d * d * d * rr);
    for (std::size_t a = 0; a < d; ++a)
        for (std::size_t j = 0; j < d; ++j)
            for (std::size_t i = 0; i < d; ++i)
                for (std::size_t k = 0; k < rr; ++k) {
                    Vec A(d * rr, 0);
                    A[a * rr + k] = 1;
                    const Vec J = s.basis(j), AI = s.mul(A, s.basis(i));
                    Vec col(out.rows(), 0);
                    // r_k b_a (x) b_j* (x) b_i -> sum (b_j* . v^2) (x) v^1 v^3 r_k b_a b_i
                    for (const auto& term : terms) {
                        const Vec &x = term.slots[0], &y = term.slots[1], &z = term.slots[2];
                        add_times(zn, term.c, s.end_from_dual_tensor(s.dual_act(J, y), s.mul(s.mul(x, z), AI)), col);
                    }
                    out.set_column(((a * d + j) * d + i) * rr + k, col);
                }
    return out;
}

DescentAlgebra descent_algebra(const NormalBasisCoring& C) {
    require_azumaya(C, "descent algebra");
    const AmitsurComplex& c = *C.complex();
    const Extension& ext = *c.ext();
    const Zn& zn = ext.base()->zn();
    const std::size_t d = ext.degree(), rr = ext.base_rank(), m = d * d;
    Matrix cond = descent_condition(c, C.twist().u());
    Matrix gens = kernel(zn, cond);
    const cpp_int expected = pow(cpp_int(zn.modulus()), unsigned(rr * m));
    const bool rank_ok = kernel_size(zn, cond) == expected;
    if (!rank_ok) throw InternalInconsistency("descent algebra does not have rank d^2 over R");
    bool closed = true;
    auto in_kernel = [&](const Vec& x) { return all_zero(apply(zn, cond, x)); };
    for (std::size_t g = 0; g < gens.rows() && closed; ++g)
        for (std::size_t h = 0; h < gens.rows() && closed; ++h)
            closed = in_kernel(ambient_multiply(ext, gens.row(g), gens.row(h)));
    if (!closed) throw InternalInconsistency("descent algebra is not closed under multiplication");

    // Structure constants on the basis gamma(E_p), read off by solving against gamma.
    Matrix gamma = gamma_matrix(C);
    if (!is_injective(zn, gamma)) throw InternalInconsistency("gamma is not injective");
    std::vector<Vec> images, table;
    for (std::size_t p = 0; p < m; ++p) images.push_back(apply(zn, gamma, r_one_at(*ext.base(), m, p)));
    for (std::size_t p = 0; p < m; ++p)
        for (std::size_t q = 0; q < m; ++q) {
            auto coords = solve(zn, gamma, ambient_multiply(ext, images[p], images[q]));
            if (!coords) throw InternalInconsistency("product of gamma images left the image of gamma");
            table.push_back(std::move(*coords));
        }
    auto one = solve(zn, gamma, ambient_one(ext));
    if (!one) throw InternalInconsistency("the unit of S (x) End(S) is not in A(u)");
    RAlgebra alg(ext.base(), m, std::move(table), std::move(*one), "A(u) over " + ext.name());
    return {C.complex(), C.twist().u(), std::move(cond), std::move(gens), rank_ok, closed, std::move(alg), std::move(gamma)};
}

GammaReport verify_gamma(const NormalBasisCoring& C) {
    const Extension& ext = *C.complex()->ext();
    const Zn& zn = ext.base()->zn();
    GammaReport r;
    DescentAlgebra A = descent_algebra(C);
    r.rank_ok = A.rank_ok;
    r.closed = A.closed;
    r.descent_rank = ext.degree() * ext.degree();
    const Matrix& g = A.gamma;
    const Matrix ginv = gamma_inverse_matrix(C);
    const std::size_t end_size = g.cols();
    r.image_in_descent = multiply(zn, A.condition, g) == Matrix(A.condition.rows(), end_size);
    RAlgebra twisted = right_dual_algebra(C);
    r.multiplicative = true;
    for (std::size_t p = 0; p < end_size && r.multiplicative; ++p)
        for (std::size_t q = 0; q < end_size && r.multiplicative; ++q) {
            Vec ep = unit_vector(end_size, p), eq = unit_vector(end_size, q);
            r.multiplicative = apply(zn, g, twisted.multiply(ep, eq)) ==
                               ambient_multiply(ext, apply(zn, g, ep), apply(zn, g, eq));
        }
    r.unital = apply(zn, g, twisted_unit(C)) == ambient_one(ext);
    r.bijective = is_injective(zn, g) && A.rank_ok;
    r.left_inverse = multiply(zn, ginv, g) == Matrix::identity(end_size);
    r.right_inverse = true;
    for (std::size_t k = 0; k < A.generators.rows(); ++k) {
        Vec x(A.generators.row(k).begin(), A.generators.row(k).end());
        if (apply(zn, g, apply(zn, ginv, x)) != x) r.right_inverse = false;
    }
    return r;
}

std::size_t enveloping_size(const RAlgebra& a) { return a.rank() * a.rank() * a.base()->rank(); }

bool is_azumaya_algebra(const RAlgebra& a) {
    const std::size_t m = a.rank(), rr = a.base()->rank();
    const std::size_t size = enveloping_size(a);
    Matrix env(size, size);
    for (std::size_t p = 0; p < m; ++p)
        for (std::size_t q = 0; q < m; ++q)
            for (std::size_t k = 0; k < rr; ++k) {
                Vec col(size, 0);
                const Vec rk = unit_vector(rr, k);
                // x = a_t  ->  r_k a_p a_t a_q, stored in rows (row, t).
                for (std::size_t t = 0; t < m; ++t) {
                    Vec img(a.zn_rank(), 0);
                    add_scaled(*a.base(), rk, a.multiply(a.multiply(a.basis(p), a.basis(t)), a.basis(q)), img);
                    for (std::size_t row = 0; row < m; ++row)
                        std::copy_n(img.begin() + std::ptrdiff_t(row * rr), rr,
                                    col.begin() + std::ptrdiff_t((row * m + t) * rr));
                }
                env.set_column((p * m + q) * rr + k, col);
            }
    return is_bijective(a.base()->zn(), env);
}

Matrix untwist_matrix(const AmitsurComplex& c, const RingElement& w) {
    if (c.level_of(w.ring()) != 2) throw InvalidInput("untwisting witness must lie in S (x) S");
    SOps s(*c.ext());
    const std::size_t d = s.d, rr = s.rr;
    const Zn& zn = s.r.zn();
    const auto terms = expand(c, w);
    Matrix out(d * d * rr, d * d * rr);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            for (std::size_t k = 0; k < rr; ++k) {
                const Vec rk = unit_vector(rr, k), bi = s.scale(rk, s.basis(i));
                std::vector<Vec> cols;
                // Phi(r_k E_ij)(b_q) = sum w^2 [b_q w^1]_j r_k b_i
                for (std::size_t q = 0; q < d; ++q) {
                    Vec acc(d * rr, 0);
                    for (const auto& term : terms) {
                        Vec bw = s.mul(s.basis(q), term.slots[0]);
                        Vec v = s.scale(block(bw, j, rr), s.mul(term.slots[1], bi));
                        add_times(zn, term.c, v, acc);
                    }
                    cols.push_back(std::move(acc));
                }
                out.set_column((i * d + j) * rr + k, s.end_from_columns(cols));
            }
    return out;
}

UntwistIso untwist_iso(const NormalBasisCoring& C, const RingElement& w) {
    require_azumaya(C, "untwist");
    const AmitsurComplex& c = *C.complex();
    if (!is_unit(w) || coboundary(c, w) != C.twist().u())
        throw InvalidInput("witness " + w.to_string() + " does not have coboundary " + C.twist().u().to_string());
    const Zn& zn = c.ext()->base()->zn();
    UntwistIso out;
    out.map = untwist_matrix(c, w);
    RAlgebra twisted = right_dual_algebra(C), plain = endomorphism_algebra(*c.ext());
    const std::size_t size = out.map.cols();
    out.multiplicative = true;
    for (std::size_t p = 0; p < size && out.multiplicative; ++p)
        for (std::size_t q = 0; q < size && out.multiplicative; ++q) {
            Vec ep = unit_vector(size, p), eq = unit_vector(size, q);
            out.multiplicative =
                apply(zn, out.map, twisted.multiply(ep, eq)) == plain.multiply(apply(zn, out.map, ep), apply(zn, out.map, eq));
        }
    out.unital = apply(zn, out.map, twisted_unit(C)) == plain.one();
    out.bijective = is_bijective(zn, out.map);
    return out;
}

SplitCertificate split_certificate(const NormalBasisCoring& C) {
    require_azumaya(C, "split certificate");
    BaseChangedCoring b = base_change(C, C.complex()->ext());
    SplitCertificate out;
    BaseChangeWitness w = check_base_change_witness(*b.change, C.twist());
    out.witness_verified = w.verified();
    if (out.witness_verified) out.untwist = untwist_iso(b.coring, w.witness);
    return out;
}

std::string multiplication_table(const RAlgebra& a) {
    std::ostringstream os;
    for (std::size_t p = 0; p < a.rank(); ++p)
        for (std::size_t q = 0; q < a.rank(); ++q) {
            os << p << ' ' << q << " :";
            for (Coeff v : a.product(p, q)) os << ' ' << v;
            os << '\n';
        }
    return os.str();
}

}  // namespace amitsur
