#include "kgl/abelian.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <sstream>

#include "kgl/errors.hpp"

namespace kgl {

using boost::multiprecision::gcd;
using boost::multiprecision::lcm;

namespace {

IntMatrix torsion_relation_columns(const FGAbGroup& g) {
    std::vector<IntVec> cols;
    for (std::size_t i = 0; i < g.gen_count(); ++i) {
        if (g.orders[i] == 0) continue;
        IntVec c(g.gen_count(), Int(0));
        c[i] = g.orders[i];
        cols.push_back(c);
    }
    return IntMatrix::from_columns(g.gen_count(), cols);
}

}  // namespace

FGAbGroup FGAbGroup::abstract_group(std::size_t free_rank, const IntVec& factors) {
    IntVec fs = normalize_factors(factors);
    FGAbGroup g;
    g.ambient = fs.size() + free_rank;
    g.gens = IntMatrix::identity(g.ambient);
    g.orders = fs;
    for (std::size_t i = 0; i < free_rank; ++i) g.orders.push_back(0);
    std::vector<IntVec> rel;
    for (std::size_t i = 0; i < fs.size(); ++i) {
        IntVec c(g.ambient, Int(0));
        c[i] = fs[i];
        rel.push_back(c);
    }
    g.relations = IntMatrix::from_columns(g.ambient, rel);
    return g;
}

std::size_t FGAbGroup::free_rank() const {
    std::size_t n = 0;
    for (const auto& d : orders)
        if (d == 0) ++n;
    return n;
}

IntVec FGAbGroup::invariant_factors() const {
    IntVec fs;
    for (const auto& d : orders)
        if (d != 0) fs.push_back(d);
    return fs;
}

bool FGAbGroup::same_iso_class(const FGAbGroup& other) const {
    return free_rank() == other.free_rank() && invariant_factors() == other.invariant_factors();
}

std::optional<IntVec> FGAbGroup::coords(const IntVec& z) const {
    auto sol = solve_integer(gens.hstack(relations), z);
    if (!sol) return std::nullopt;
    IntVec c(sol->begin(), sol->begin() + gen_count());
    return reduce(std::move(c));
}

IntVec FGAbGroup::reduce(IntVec c) const {
    for (std::size_t i = 0; i < c.size(); ++i)
        if (orders[i] != 0) c[i] = mod_floor(c[i], orders[i]);
    return c;
}

std::string FGAbGroup::describe() const {
    if (orders.empty()) return "0";
    std::ostringstream os;
    std::size_t fr = free_rank();
    bool first = true;
    if (fr == 1) {
        os << "Z";
        first = false;
    } else if (fr > 1) {
        os << "Z^" << fr;
        first = false;
    }
    for (const auto& d : orders)
        if (d != 0) {
            os << (first ? "" : " + ") << "Z/" << d;
            first = false;
        }
    return os.str();
}

IntVec normalize_factors(IntVec factors) {
    for (const auto& d : factors)
        if (d < 1) throw Error("InvalidFactor", "cyclic order must be >= 1");
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < factors.size(); ++i)
            for (std::size_t j = i + 1; j < factors.size(); ++j) {
                if (factors[j] % factors[i] == 0) continue;
                Int g = gcd(factors[i], factors[j]);
                Int l = factors[i] / g * factors[j];
                factors[i] = g;
                factors[j] = l;
                changed = true;
            }
    }
    factors.erase(std::remove(factors.begin(), factors.end(), Int(1)), factors.end());
    std::sort(factors.begin(), factors.end());
    return factors;
}

FGAbGroup subquotient(const IntMatrix& k_gens, const IntMatrix& b_gens, std::size_t ambient,
                      const IntVec& row_moduli) {
    IntMatrix kb = column_lattice_basis(k_gens);
    const std::size_t s = kb.cols();

    // express B in the kernel basis; failure means B is not inside K
    LinearSolver ksolve(kb);
    std::vector<IntVec> xcols;
    for (std::size_t j = 0; j < b_gens.cols(); ++j) {
        auto x = ksolve.solve(b_gens.column(j));
        if (!x) throw Error("NotASubgroup", "denominator lattice not contained in numerator");
        xcols.push_back(*x);
    }
    IntMatrix x = IntMatrix::from_columns(s, xcols);

    Smith sx = smith_normal_form(x);
    IntMatrix new_gens = kb * sx.Uinv;  // ambient x s, order of column i is sx diagonal (or 0)
    if (!row_moduli.empty())
        for (std::size_t r = 0; r < ambient; ++r) {
            if (row_moduli[r] == 0) continue;
            for (std::size_t c = 0; c < new_gens.cols(); ++c)
                new_gens.at(r, c) = mod_floor(new_gens.at(r, c), row_moduli[r]);
        }

    FGAbGroup g;
    g.ambient = ambient;
    g.relations = column_lattice_basis(b_gens);

    std::vector<std::pair<Int, IntVec>> kept;  // (order, rep)
    for (std::size_t i = 0; i < s; ++i) {
        Int d = i < sx.diagonal.size() ? sx.diagonal[i] : Int(0);
        if (d == 1) continue;  // killed generator
        kept.emplace_back(d, new_gens.column(i));
    }
    // torsion first (divisibility order is inherited from the SNF), then free
    std::stable_sort(kept.begin(), kept.end(), [](const auto& a, const auto& b) {
        if ((a.first == 0) != (b.first == 0)) return b.first == 0;
        return false;
    });
    std::vector<IntVec> cols;
    for (auto& [d, rep] : kept) {
        g.orders.push_back(d);
        cols.push_back(rep);
    }
    g.gens = IntMatrix::from_columns(ambient, cols);
    return g;
}

FGAbGroup subquotient_homology(const IntMatrix& d_out, const IntMatrix& d_in) {
    if (d_out.cols() != d_in.rows())
        throw Error("DimensionMismatch", "boundary matrices are not composable");
    if (!(d_out * d_in).is_zero())
        throw Error("NotAComplex", "composition of boundary maps is nonzero");
    return subquotient(kernel_basis(d_out), d_in, d_out.cols());
}

GroupHom GroupHom::make(FGAbGroup src, FGAbGroup dst, IntMatrix m) {
    if (m.rows() != dst.gen_count() || m.cols() != src.gen_count())
        throw Error("DimensionMismatch", "hom matrix shape does not match presentations");
    for (std::size_t j = 0; j < src.gen_count(); ++j) {
        if (src.orders[j] == 0) continue;
        for (std::size_t i = 0; i < dst.gen_count(); ++i) {
            Int v = src.orders[j] * m.at(i, j);
            bool ok = dst.orders[i] == 0 ? v == 0 : v % dst.orders[i] == 0;
            if (!ok)
                throw Error("NotAHom", "matrix does not respect source relation at generator " +
                                           std::to_string(j));
        }
    }
    // store reduced columns
    for (std::size_t j = 0; j < m.cols(); ++j) m.set_column(j, dst.reduce(m.column(j)));
    GroupHom h;
    h.source = std::move(src);
    h.target = std::move(dst);
    h.matrix = std::move(m);
    return h;
}

GroupHom GroupHom::identity(const FGAbGroup& g) {
    return make(g, g, IntMatrix::identity(g.gen_count()));
}

GroupHom GroupHom::zero(const FGAbGroup& src, const FGAbGroup& dst) {
    return make(src, dst, IntMatrix::zero(dst.gen_count(), src.gen_count()));
}

IntVec GroupHom::apply(const IntVec& source_coords) const {
    return target.reduce(matrix.apply(source_coords));
}

bool GroupHom::is_zero() const {
    for (std::size_t j = 0; j < matrix.cols(); ++j)
        if (!vec_is_zero(target.reduce(matrix.column(j)))) return false;
    return true;
}

bool GroupHom::is_identity() const {
    if (source.gen_count() != target.gen_count()) return false;
    IntMatrix d = matrix - IntMatrix::identity(matrix.rows());
    for (std::size_t j = 0; j < d.cols(); ++j)
        if (!vec_is_zero(target.reduce(d.column(j)))) return false;
    return true;
}

GroupHom induced_hom(const IntMatrix& t, const FGAbGroup& src, const FGAbGroup& dst) {
    if (t.rows() != dst.ambient || t.cols() != src.ambient)
        throw Error("DimensionMismatch", "ambient map shape mismatch");
    // B_src must land in B_dst
    LinearSolver bsolve(dst.relations);
    for (std::size_t j = 0; j < src.relations.cols(); ++j)
        if (!bsolve.solve(t.apply(src.relations.column(j))))
            throw Error("NotChainMap", "map does not preserve the denominator lattice");
    std::vector<IntVec> cols;
    for (std::size_t j = 0; j < src.gen_count(); ++j) {
        auto c = dst.coords(t.apply(src.gens.column(j)));
        if (!c) throw Error("NotChainMap", "image of generator leaves the numerator lattice");
        cols.push_back(*c);
    }
    return GroupHom::make(src, dst, IntMatrix::from_columns(dst.gen_count(), cols));
}

GroupHom compose(const GroupHom& g, const GroupHom& f) {
    if (!(f.target.gens == g.source.gens) || f.target.orders != g.source.orders)
        throw Error("DimensionMismatch", "compose: middle groups differ");
    return GroupHom::make(f.source, g.target, g.matrix * f.matrix);
}

FGAbGroup kernel_group(const GroupHom& h) {
    // {x : M x in B_dst} / B_src, inside Z^{s_src}
    IntMatrix stacked = h.matrix.hstack(torsion_relation_columns(h.target));
    IntMatrix full = kernel_basis(stacked);
    IntMatrix xpart(h.source.gen_count(), full.cols());
    for (std::size_t i = 0; i < h.source.gen_count(); ++i)
        for (std::size_t j = 0; j < full.cols(); ++j) xpart.at(i, j) = full.at(i, j);
    IntMatrix bsrc = torsion_relation_columns(h.source);
    return subquotient(xpart.hstack(bsrc), bsrc, h.source.gen_count(), h.source.orders);
}

FGAbGroup image_group(const GroupHom& h) {
    IntMatrix bdst = torsion_relation_columns(h.target);
    return subquotient(h.matrix.hstack(bdst), bdst, h.target.gen_count(), h.target.orders);
}

FGAbGroup cokernel_group(const GroupHom& h) {
    IntMatrix bdst = torsion_relation_columns(h.target);
    return subquotient(IntMatrix::identity(h.target.gen_count()), h.matrix.hstack(bdst),
                       h.target.gen_count(), h.target.orders);
}

ExactnessResult check_exact(const GroupHom& f, const GroupHom& g) {
    if (!(f.target.gens == g.source.gens) || f.target.orders != g.source.orders)
        throw Error("DimensionMismatch", "check_exact: target(f) != source(g)");
    ExactnessResult res;

    // g∘f = 0
    IntMatrix comp = g.matrix * f.matrix;
    for (std::size_t j = 0; j < comp.cols(); ++j) {
        IntVec c = g.target.reduce(comp.column(j));
        if (!vec_is_zero(c)) {
            res.exact = false;
            res.detail = "composition nonzero on image generator " + std::to_string(j);
            res.witness = f.matrix.column(j);
            return res;
        }
    }

    // every kernel generator of g lies in im(f) + B
    IntMatrix stacked = g.matrix.hstack(torsion_relation_columns(g.target));
    IntMatrix full = kernel_basis(stacked);
    IntMatrix bmid = torsion_relation_columns(f.target);
    LinearSolver imsolve(f.matrix.hstack(bmid));
    for (std::size_t j = 0; j < full.cols(); ++j) {
        IntVec k(f.target.gen_count());
        for (std::size_t i = 0; i < k.size(); ++i) k[i] = full.at(i, j);
        if (!imsolve.solve(k)) {
            res.exact = false;
            res.detail = "kernel class not hit by incoming map";
            res.witness = f.target.reduce(k);
            return res;
        }
    }
    res.exact = true;
    res.detail = "im = ker";
    return res;
}

namespace {

// cyclic orders of Hom(Z/d, A) resp. A/dA for one cyclic piece Z/d of G
void append_hom_factors(const Int& d, const FGAbGroup& a, IntVec& out, std::size_t& free_out) {
    if (d == 0) {  // Hom(Z, A) = A
        free_out += a.free_rank();
        for (const auto& e : a.invariant_factors()) out.push_back(e);
    } else {  // Hom(Z/d, A) = d-torsion of A
        for (const auto& e : a.invariant_factors()) out.push_back(gcd(d, e));
    }
}

void append_ext_factors(const Int& d, const FGAbGroup& a, IntVec& out) {
    if (d == 0) return;  // Ext(Z, A) = 0
    for (std::size_t i = 0; i < a.free_rank(); ++i) out.push_back(d);
    for (const auto& e : a.invariant_factors()) out.push_back(gcd(d, e));
}

}  // namespace

FGAbGroup hom_group(const FGAbGroup& g, const FGAbGroup& a) {
    IntVec fs;
    std::size_t free_rank = 0;
    for (const auto& d : g.orders) append_hom_factors(d, a, fs, free_rank);
    return FGAbGroup::abstract_group(free_rank, fs);
}

FGAbGroup ext_group(const FGAbGroup& g, const FGAbGroup& a) {
    IntVec fs;
    for (const auto& d : g.orders) append_ext_factors(d, a, fs);
    return FGAbGroup::abstract_group(0, fs);
}

FGAbGroup direct_sum(const FGAbGroup& a, const FGAbGroup& b) {
    IntVec fs = a.invariant_factors();
    for (const auto& d : b.invariant_factors()) fs.push_back(d);
    return FGAbGroup::abstract_group(a.free_rank() + b.free_rank(), fs);
}

}  // namespace kgl
