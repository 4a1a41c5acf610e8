#include "amitsur/extension.hpp"

#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

#include "amitsur/errors.hpp"

namespace amitsur {

Extension::Extension(RingPtr base, RingPtr top, RingHom eta, std::vector<RingElement> basis, std::string name)
    : base_(std::move(base)), top_(std::move(top)), eta_(std::move(eta)), basis_(std::move(basis)), name_(std::move(name)) {
    if (eta_.source() != base_ || eta_.target() != top_) throw InvalidInput("structure map has the wrong source or target");
    if (basis_.empty()) throw InvalidInput("extension basis must be non-empty");
    if (!eta_.is_unital() || !eta_.is_multiplicative()) throw InvalidInput("structure map is not a unital ring map");
    for (const auto& b : basis_)
        if (b.ring() != top_) throw InvalidInput("basis element outside the top ring");
    if (name_.empty()) name_ = "(" + top_->name() + ")/(" + base_->name() + ")";

    const std::size_t d = degree(), rr = base_rank(), rs = top_->rank();
    if (d * rr != rs)
        throw InvalidInput("basis of size " + std::to_string(d) + " over a rank-" + std::to_string(rr) +
                           " base cannot span a rank-" + std::to_string(rs) + " ring");
    // Column (i, k) is eta(e_k) * b_i.
    from_coords_ = Matrix(rs, d * rr);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t k = 0; k < rr; ++k) {
            Vec ek(rr, 0);
            ek[k] = 1;
            Vec col = top_->multiply(eta_.apply(ek), basis_[i].coeffs());
            from_coords_.set_column(i * rr + k, col);
        }
    if (!is_bijective(top_->zn(), from_coords_)) throw InvalidInput("declared basis does not make the top ring free over the base");
    to_coords_ = Matrix(d * rr, rs);
    for (std::size_t j = 0; j < rs; ++j) {
        Vec ej(rs, 0);
        ej[j] = 1;
        auto x = solve(top_->zn(), from_coords_, ej);
        if (!x) throw InternalInconsistency("bijective basis matrix failed to solve");
        to_coords_.set_column(j, *x);
    }
    basis_products_.reserve(d * d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            basis_products_.push_back(to_base_coords(top_->multiply(basis_[i].coeffs(), basis_[j].coeffs())));
    one_coords_ = to_base_coords(top_->one());
}

ExtPtr Extension::make(RingPtr base, RingPtr top, RingHom eta, std::vector<RingElement> basis, std::string name) {
    return std::make_shared<const Extension>(std::move(base), std::move(top), std::move(eta), std::move(basis), std::move(name));
}

Vec Extension::to_base_coords(std::span<const Coeff> s) const { return apply(top_->zn(), to_coords_, s); }
Vec Extension::from_base_coords(std::span<const Coeff> rc) const { return apply(top_->zn(), from_coords_, rc); }

RingPtr integers_mod(std::uint64_t n) {
    // One shared object per modulus, so extensions over Z/nZ agree on their base.
    static std::mutex lock;
    static std::map<std::uint64_t, RingPtr> cache;
    std::lock_guard guard(lock);
    auto& slot = cache[n];
    if (!slot) slot = make_quotient_ring(n, {0, 1});
    return slot;
}

ExtPtr over_integers(const RingPtr& top) {
    RingPtr base = integers_mod(top->modulus());
    Matrix eta(top->rank(), 1);
    eta.set_column(0, top->one());
    std::vector<RingElement> basis;
    for (std::size_t i = 0; i < top->rank(); ++i) basis.push_back(RingElement::basis(top, i));
    return Extension::make(base, top, RingHom(base, top, std::move(eta)), std::move(basis),
                           "(" + top->name() + ")/(Z/" + std::to_string(top->modulus()) + ")");
}

void base_mul_into(const FiniteRing& base, std::span<const Coeff> a, std::span<const Coeff> b, std::span<Coeff> out) {
    if (base.rank() == 1 && base.one()[0] == 1) {
        out[0] = base.zn().mul(a[0], b[0]);
        return;
    }
    base.multiply(a, b, out);
}

Vec pure_tensor(const FiniteRing& base, std::span<const Coeff> scalar, const std::vector<Vec>& slots) {
    const std::size_t rr = base.rank();
    Vec cur(scalar.begin(), scalar.end());
    Vec tmp(rr);
    for (const Vec& slot : slots) {
        const std::size_t entries = cur.size() / rr, d = slot.size() / rr;
        Vec next(entries * d * rr, 0);
        for (std::size_t e = 0; e < entries; ++e) {
            std::span<const Coeff> ce(cur.data() + e * rr, rr);
            if (std::all_of(ce.begin(), ce.end(), [](Coeff c) { return c == 0; })) continue;
            for (std::size_t j = 0; j < d; ++j) {
                std::span<const Coeff> sj(slot.data() + j * rr, rr);
                if (std::all_of(sj.begin(), sj.end(), [](Coeff c) { return c == 0; })) continue;
                base_mul_into(base, ce, sj, std::span<Coeff>(next.data() + (e * d + j) * rr, rr));
            }
        }
        cur = std::move(next);
    }
    return cur;
}

ExtPtr tensor_over_base(const std::vector<ExtPtr>& factors, const Limits& limits) {
    if (factors.empty()) throw InvalidInput("tensor product of no factors");
    const RingPtr& base = factors[0]->base();
    for (const auto& f : factors)
        if (f->base() != base) throw InvalidInput("tensor factors over different base rings");
    const std::size_t rr = base->rank();
    std::vector<std::size_t> dims;
    std::size_t total = 1;
    for (const auto& f : factors) {
        dims.push_back(f->degree());
        total *= f->degree();
        if (total * rr > limits.max_rank)
            throw RingTooLarge("tensor product rank exceeds the cap of " + std::to_string(limits.max_rank));
    }
    const std::size_t k = factors.size(), rank = total * rr;

    auto split = [&](std::size_t flat) {
        std::vector<std::size_t> idx(k);
        for (std::size_t s = k; s-- > 0;) {
            idx[s] = flat % dims[s];
            flat /= dims[s];
        }
        return idx;
    };

    std::vector<std::vector<Term>> products;
    products.reserve(rank * (rank + 1) / 2);
    Vec scalar(rr);
    for (std::size_t a = 0; a < rank; ++a) {
        const auto ia = split(a / rr);
        for (std::size_t b = a; b < rank; ++b) {
            const auto ib = split(b / rr);
            Vec ea(rr, 0), eb(rr, 0);
            ea[a % rr] = 1;
            eb[b % rr] = 1;
            base_mul_into(*base, ea, eb, scalar);
            std::vector<Vec> slots;
            slots.reserve(k);
            for (std::size_t s = 0; s < k; ++s) slots.push_back(factors[s]->basis_product(ia[s], ib[s]));
            Vec prod = pure_tensor(*base, scalar, slots);
            std::vector<Term> terms;
            for (std::size_t t = 0; t < prod.size(); ++t)
                if (prod[t] != 0) terms.push_back({std::uint32_t(t), prod[t]});
            products.push_back(std::move(terms));
        }
    }
    std::vector<Vec> ones;
    for (const auto& f : factors) ones.push_back(f->one_coords());
    Vec one = pure_tensor(*base, base->one(), ones);

    std::ostringstream name;
    for (std::size_t s = 0; s < k; ++s) name << (s ? " (x) " : "") << "(" << factors[s]->top()->name() << ")";
    name << " over (" << base->name() << ")";
    auto top = std::make_shared<const FiniteRing>(base->modulus(), rank, std::move(products), one, name.str());

    Matrix eta(rank, rr);
    for (std::size_t j = 0; j < rr; ++j) {
        Vec ej(rr, 0);
        ej[j] = 1;
        eta.set_column(j, pure_tensor(*base, ej, ones));
    }
    std::vector<RingElement> basis;
    basis.reserve(total);
    for (std::size_t t = 0; t < total; ++t) {
        Vec v(rank, 0);
        std::copy(base->one().begin(), base->one().end(), v.begin() + std::ptrdiff_t(t * rr));
        basis.emplace_back(top, std::move(v));
    }
    std::ostringstream ename;
    ename << name.str();
    return Extension::make(base, top, RingHom(base, top, std::move(eta)), std::move(basis), ename.str());
}

TensorTower::TensorTower(ExtPtr ext, int max_level, const Limits& limits) : ext_(std::move(ext)), limits_(limits) {
    if (max_level < 1) throw InvalidInput("tower needs at least level 1");
    levels_.push_back(ext_->top());
    for (int n = 2; n <= max_level; ++n)
        levels_.push_back(tensor_over_base(std::vector<ExtPtr>(std::size_t(n), ext_), limits_)->top());
    faces_.resize(std::size_t(max_level));
    for (int n = 1; n < max_level; ++n)
        for (int i = 1; i <= n + 1; ++i) {
            std::vector<int> slots(static_cast<std::size_t>(n));
            for (int s = 0; s < n; ++s) slots[std::size_t(s)] = s + 1 < i ? s : s + 1;
            faces_[std::size_t(n - 1)].push_back(slot_map(n, n + 1, slots));
        }
    for (int n = 1; n <= max_level; ++n) collapses_.push_back(slot_map(n, 1, std::vector<int>(std::size_t(n), 0)));
}

const RingPtr& TensorTower::ring(int level) const {
    if (level < 1 || level > max_level())
        throw InvalidInput("tensor level " + std::to_string(level) + " outside 1.." + std::to_string(max_level()));
    return levels_[std::size_t(level - 1)];
}

const RingHom& TensorTower::face(int n, int i) const {
    if (n < 1 || n >= max_level()) throw InvalidInput("face map source level " + std::to_string(n) + " out of range");
    if (i < 1 || i > n + 1)
        throw InvalidInput("face index " + std::to_string(i) + " outside 1.." + std::to_string(n + 1));
    return faces_[std::size_t(n - 1)][std::size_t(i - 1)];
}

const RingHom& TensorTower::collapse(int n) const {
    ring(n);
    return collapses_[std::size_t(n - 1)];
}

Vec TensorTower::to_base_coords(int level, std::span<const Coeff> x) const {
    if (level == 1) return ext_->to_base_coords(x);
    return Vec(x.begin(), x.end());
}

RingElement TensorTower::from_base_coords(int level, std::span<const Coeff> rc) const {
    if (level == 1) return {ring(1), ext_->from_base_coords(rc)};
    return {ring(level), Vec(rc.begin(), rc.end())};
}

RingHom TensorTower::slot_map(int from, int to, const std::vector<int>& target_slots) const {
    const RingPtr& src = ring(from);
    const RingPtr& dst = ring(to);
    if (int(target_slots.size()) != from) throw InvalidInput("slot map needs one target per source slot");
    for (int t : target_slots)
        if (t < 0 || t >= to) throw InvalidInput("slot map target out of range");
    const FiniteRing& base = *ext_->base();
    const FiniteRing& s_ring = *ext_->top();
    const std::size_t rr = base.rank(), d = ext_->degree();

    // Images of the base-coordinate basis r_k b_I.
    std::size_t src_entries = 1;
    for (int s = 0; s < from; ++s) src_entries *= d;
    Matrix images(dst->rank(), src_entries * rr);
    std::vector<std::size_t> idx(static_cast<std::size_t>(from));
    for (std::size_t flat = 0; flat < src_entries; ++flat) {
        std::size_t rest = flat;
        for (int s = from; s-- > 0;) {
            idx[std::size_t(s)] = rest % d;
            rest /= d;
        }
        std::vector<Vec> slot_elems(std::size_t(to), s_ring.one());
        for (int s = 0; s < from; ++s) {
            Vec& acc = slot_elems[std::size_t(target_slots[std::size_t(s)])];
            acc = s_ring.multiply(acc, ext_->basis()[idx[std::size_t(s)]].coeffs());
        }
        std::vector<Vec> slot_coords;
        for (const Vec& e : slot_elems) slot_coords.push_back(ext_->to_base_coords(e));
        for (std::size_t k = 0; k < rr; ++k) {
            Vec ek(rr, 0);
            ek[k] = 1;
            Vec img = pure_tensor(base, ek, slot_coords);
            RingElement as_elem = from_base_coords(to, img);
            images.set_column(flat * rr + k, as_elem.coeffs());
        }
    }
    if (from == 1) {
        Matrix to_coords(src_entries * rr, src->rank());
        for (std::size_t j = 0; j < src->rank(); ++j) {
            Vec ej(src->rank(), 0);
            ej[j] = 1;
            to_coords.set_column(j, ext_->to_base_coords(ej));
        }
        images = multiply(src->zn(), images, to_coords);
    }
    return {src, dst, std::move(images)};
}

RingElement TensorTower::pure(const std::vector<RingElement>& slots) const {
    const int n = int(slots.size());
    std::vector<Vec> coords;
    for (const auto& s : slots) {
        if (s.ring() != ext_->top()) throw InvalidInput("pure tensor slot outside S");
        coords.push_back(ext_->to_base_coords(s.coeffs()));
    }
    return from_base_coords(n, pure_tensor(*ext_->base(), ext_->base()->one(), coords));
}

TowerPtr make_tower(ExtPtr ext, int max_level, const Limits& limits) {
    return std::make_shared<const TensorTower>(std::move(ext), max_level, limits);
}

BaseChange::BaseChange(TowerPtr source_tower, ExtPtr t, int max_level) : source_(std::move(source_tower)), t_(std::move(t)) {
    const ExtPtr& s = source_->ext();
    if (s->base() != t_->base()) throw InvalidInput("base change along an algebra over a different base ring");
    const Limits& limits = source_->limits();
    const FiniteRing& r = *s->base();
    const std::size_t rr = r.rank(), d = s->degree(), dt = t_->degree();
    const RingPtr& t_ring = t_->top();

    // (S (x) T)/T with T-basis b_i (x) 1.
    ExtPtr st = tensor_over_base({s, t_}, limits);
    const RingPtr& st_ring = st->top();
    Matrix eta(st_ring->rank(), t_ring->rank());
    for (std::size_t j = 0; j < t_ring->rank(); ++j) {
        Vec ej(t_ring->rank(), 0);
        ej[j] = 1;
        eta.set_column(j, pure_tensor(r, r.one(), {s->one_coords(), t_->to_base_coords(ej)}));
    }
    std::vector<RingElement> basis;
    for (std::size_t i = 0; i < d; ++i) {
        Vec bi(d * rr, 0);
        std::copy(r.one().begin(), r.one().end(), bi.begin() + std::ptrdiff_t(i * rr));
        basis.emplace_back(st_ring, pure_tensor(r, r.one(), {bi, t_->one_coords()}));
    }
    ExtPtr changed = Extension::make(t_ring, st_ring, RingHom(t_ring, st_ring, std::move(eta)), std::move(basis),
                                     "(" + st_ring->name() + ")/(" + t_ring->name() + ")");
    tower_ = make_tower(changed, max_level, limits);

    const std::size_t rt = t_ring->rank();
    for (int n = 1; n <= max_level; ++n) {
        RingPtr split;
        if (t_ == s && n + 1 <= source_->max_level()) {
            split = source_->ring(n + 1);
        } else {
            std::vector<ExtPtr> factors(std::size_t(n), s);
            factors.push_back(t_);
            split = tensor_over_base(factors, limits)->top();
        }
        split_rings_.push_back(split);

        std::size_t entries = 1;
        for (int k = 0; k < n; ++k) entries *= d;
        // Base coordinates of the changed tower at level n are (I, tau), tau a native T-coordinate.
        Matrix to(split->rank(), entries * rt);
        std::vector<std::size_t> idx(static_cast<std::size_t>(n));
        for (std::size_t flat = 0; flat < entries; ++flat) {
            std::size_t rest = flat;
            for (int k = n; k-- > 0;) {
                idx[std::size_t(k)] = rest % d;
                rest /= d;
            }
            std::vector<Vec> slots;
            for (int k = 0; k < n; ++k) {
                Vec e(d * rr, 0);
                std::copy(r.one().begin(), r.one().end(), e.begin() + std::ptrdiff_t(idx[std::size_t(k)] * rr));
                slots.push_back(std::move(e));
            }
            slots.emplace_back();
            for (std::size_t tau = 0; tau < rt; ++tau) {
                Vec et(rt, 0);
                et[tau] = 1;
                slots.back() = t_->to_base_coords(et);
                to.set_column(flat * rt + tau, pure_tensor(r, r.one(), slots));
            }
        }
        const RingPtr& level = tower_->ring(n);
        Matrix native_to_base(entries * rt, level->rank());
        for (std::size_t j = 0; j < level->rank(); ++j) {
            Vec ej(level->rank(), 0);
            ej[j] = 1;
            native_to_base.set_column(j, tower_->to_base_coords(n, ej));
        }
        to_split_.emplace_back(level, split, multiply(r.zn(), to, native_to_base));

        // Inverse: r_k b_I c_j |-> (b_I) with T-coefficient eta_T(e_k) c_j.
        Matrix from(level->rank(), split->rank());
        for (std::size_t flat = 0; flat < entries; ++flat)
            for (std::size_t j = 0; j < dt; ++j)
                for (std::size_t k = 0; k < rr; ++k) {
                    Vec ek(rr, 0);
                    ek[k] = 1;
                    Vec tcoef = t_ring->multiply(t_->eta().apply(ek), t_->basis()[j].coeffs());
                    Vec base_coords(entries * rt, 0);
                    std::copy(tcoef.begin(), tcoef.end(), base_coords.begin() + std::ptrdiff_t(flat * rt));
                    RingElement x = tower_->from_base_coords(n, base_coords);
                    from.set_column((flat * dt + j) * rr + k, x.coeffs());
                }
        from_split_.emplace_back(split, level, std::move(from));
    }
}

RingElement BaseChange::extend_scalars(const RingElement& x, int n) const {
    const ExtPtr& s = source_->ext();
    const FiniteRing& r = *s->base();
    Vec rc = source_->to_base_coords(n, x.coeffs());
    // Append a last slot holding 1_T.
    const std::size_t rr = r.rank(), dt = t_->degree();
    const Vec& one_t = t_->one_coords();
    const std::size_t entries = rc.size() / rr;
    Vec result(entries * dt * rr, 0);
    for (std::size_t e = 0; e < entries; ++e)
        for (std::size_t j = 0; j < dt; ++j)
            base_mul_into(r, std::span<const Coeff>(rc.data() + e * rr, rr), std::span<const Coeff>(one_t.data() + j * rr, rr),
                          std::span<Coeff>(result.data() + (e * dt + j) * rr, rr));
    return {split_ring(n), std::move(result)};
}

}  // namespace amitsur
