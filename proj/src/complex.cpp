#include "kgl/complex.hpp"

#include <sstream>

#include "kgl/errors.hpp"
#include "kgl/smith.hpp"

namespace kgl {

CubicalComplex CubicalComplex::build(KGraph g) {
    CubicalComplex cx;
    cx.g_ = std::move(g);
    const int k = cx.g_.rank();
    cx.cubes_.resize(k + 1);
    cx.index_.resize(k + 1);
    for (int r = 0; r <= k; ++r) {
        cx.cubes_[r] = cx.g_.cubes(r);
        for (std::size_t i = 0; i < cx.cubes_[r].size(); ++i)
            cx.index_[r][cx.cubes_[r][i]] = static_cast<int>(i);
    }
    for (int r = 1; r <= k; ++r) {
        IntMatrix d(cx.cubes_[r - 1].size(), cx.cubes_[r].size());
        for (std::size_t col = 0; col < cx.cubes_[r].size(); ++col) {
            const Cube& c = cx.cubes_[r][col];
            for (int j = 1; j <= r; ++j)
                for (int ell = 0; ell <= 1; ++ell) {
                    Cube fc = cx.g_.face(c, j, ell);
                    int row = cx.index_[r - 1].at(fc);
                    d.at(row, col) += ((j + ell) % 2 == 0) ? 1 : -1;
                }
        }
        cx.boundary_.push_back(std::move(d));
    }
    for (int r = 1; r < k; ++r)
        if (!(cx.boundary(r) * cx.boundary(r + 1)).is_zero())
            throw Error("NotAComplex", "boundary composition nonzero in degree " +
                                           std::to_string(r + 1));
    return cx;
}

std::size_t CubicalComplex::count(int r) const {
    if (r < 0 || r > top_dim()) return 0;
    return cubes_[r].size();
}

const std::vector<Cube>& CubicalComplex::cube_list(int r) const {
    static const std::vector<Cube> empty;
    if (r < 0 || r > top_dim()) return empty;
    return cubes_[r];
}

int CubicalComplex::cube_index(int r, const Cube& c) const {
    if (r < 0 || r > top_dim())
        throw Error("UnknownId", "no cubes in dimension " + std::to_string(r));
    auto it = index_[r].find(c);
    if (it == index_[r].end()) throw Error("UnknownId", "cube is not in Q_" + std::to_string(r));
    return it->second;
}

IntMatrix CubicalComplex::boundary(int r) const {
    if (r >= 1 && r <= top_dim()) return boundary_[r - 1];
    return IntMatrix::zero(count(r - 1), count(r));
}

IntMatrix CubicalComplex::coboundary(int r) const { return boundary(r + 1).transpose(); }

IntMatrix CubicalComplex::automorphism_action(const Automorphism& a, int r) const {
    IntMatrix p(count(r), count(r));
    for (std::size_t i = 0; i < count(r); ++i)
        p.at(cube_index(r, a.apply(cubes_[r][i])), i) = 1;
    return p;
}

std::string CircleDescriptor::describe() const {
    if (circle_rank == 0 && torsion.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    if (circle_rank == 1) {
        os << "T";
        first = false;
    } else if (circle_rank > 1) {
        os << "T^" << circle_rank;
        first = false;
    }
    for (const auto& d : torsion) {
        os << (first ? "" : " + ") << "Z/" << d;
        first = false;
    }
    return os.str();
}

CoeffGroup CoeffGroup::mod(Int modulus) {
    if (modulus < 2) throw Error("InvalidCoefficient", "modulus must be >= 2");
    CoeffGroup c;
    c.kind = Kind::Zmod;
    c.m = std::move(modulus);
    return c;
}

CoeffGroup CoeffGroup::fg(std::size_t rank, IntVec factors) {
    CoeffGroup c;
    c.kind = Kind::FG;
    c.fg_rank = rank;
    c.fg_factors = normalize_factors(std::move(factors));
    return c;
}

CoeffGroup CoeffGroup::parse(const std::string& text) {
    if (text == "T") return circle();
    if (text == "Z") return integers();
    // sums of "Z", "Z^a", "Z/m"
    std::size_t rank = 0;
    IntVec factors;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t next = text.find('+', pos);
        std::string term = text.substr(pos, next == std::string::npos ? next : next - pos);
        pos = next == std::string::npos ? text.size() : next + 1;
        // trim blanks
        while (!term.empty() && term.front() == ' ') term.erase(term.begin());
        while (!term.empty() && term.back() == ' ') term.pop_back();
        if (term == "Z") {
            ++rank;
        } else if (term.rfind("Z^", 0) == 0) {
            rank += std::stoul(term.substr(2));
        } else if (term.rfind("Z/", 0) == 0) {
            factors.push_back(Int(term.substr(2)));
            if (factors.back() < 2)
                throw Error("InvalidCoefficient", "modulus must be >= 2 in '" + term + "'");
        } else {
            throw Error("InvalidCoefficient", "cannot parse coefficient term '" + term + "'");
        }
    }
    if (rank == 0 && factors.size() == 1) return mod(factors[0]);
    if (rank == 1 && factors.empty()) return integers();
    return fg(rank, std::move(factors));
}

std::string CoeffGroup::describe() const {
    switch (kind) {
        case Kind::Z: return "Z";
        case Kind::Zmod: return "Z/" + m.str();
        case Kind::Circle: return "T";
        case Kind::FG: return as_group().describe();
    }
    return "?";
}

std::vector<Int> CoeffGroup::cyclic_summands() const {
    switch (kind) {
        case Kind::Z: return {Int(0)};
        case Kind::Zmod: return {m};
        case Kind::FG: {
            std::vector<Int> s(fg_rank, Int(0));
            for (const auto& d : fg_factors) s.push_back(d);
            return s;
        }
        case Kind::Circle:
            throw Error("InvalidCoefficient", "circle coefficients have no cyclic decomposition");
    }
    return {};
}

FGAbGroup CoeffGroup::as_group() const {
    switch (kind) {
        case Kind::Z: return FGAbGroup::abstract_group(1, {});
        case Kind::Zmod: return FGAbGroup::abstract_group(0, {m});
        case Kind::FG: return FGAbGroup::abstract_group(fg_rank, fg_factors);
        case Kind::Circle:
            throw Error("InvalidCoefficient", "circle group is not finitely generated");
    }
    return FGAbGroup::zero();
}

FGAbGroup homology(const CubicalComplex& cx, int r) {
    if (r < 0 || r > cx.top_dim()) return FGAbGroup::zero();
    return subquotient_homology(cx.boundary(r), cx.boundary(r + 1));
}

FGAbGroup cohomology_presented(const CubicalComplex& cx, int r, const Int& m) {
    if (r < 0) return FGAbGroup::zero();
    const std::size_t n = cx.count(r);
    if (n == 0) return FGAbGroup::zero();
    IntMatrix d_out = cx.coboundary(r);        // C^r -> C^{r+1}
    IntMatrix d_in = cx.coboundary(r - 1);     // C^{r-1} -> C^r
    IntMatrix k = kernel_mod(d_out, m);
    IntMatrix b = m == 0 ? d_in : d_in.hstack(IntMatrix::identity(n).scaled(m));
    return subquotient(k, b, n, m == 0 ? IntVec{} : IntVec(n, m));
}

CohomValue cohomology(const CubicalComplex& cx, int r, const CoeffGroup& coeff) {
    if (coeff.kind == CoeffGroup::Kind::Circle) return cohomology_via_uct(cx, r, coeff);
    CohomValue out;
    FGAbGroup acc = FGAbGroup::zero();
    bool first = true;
    for (const auto& m : coeff.cyclic_summands()) {
        FGAbGroup piece = cohomology_presented(cx, r, m);
        if (first && coeff.cyclic_summands().size() == 1) {
            out.group = piece;  // keep the presentation when there is one summand
            return out;
        }
        acc = direct_sum(acc, piece);
        first = false;
    }
    out.group = acc;
    return out;
}

CohomValue cohomology_via_uct(const CubicalComplex& cx, int r, const CoeffGroup& coeff) {
    FGAbGroup hr = homology(cx, r);
    FGAbGroup hprev = r >= 1 ? homology(cx, r - 1) : FGAbGroup::zero();
    CohomValue out;
    if (coeff.kind == CoeffGroup::Kind::Circle) {
        // Hom(Z, T) = T, Hom(Z/d, T) = Z/d, Ext(-, T) = 0
        out.circle = true;
        out.circ.circle_rank = hr.free_rank();
        out.circ.torsion = hr.invariant_factors();
        return out;
    }
    FGAbGroup a = coeff.as_group();
    out.group = direct_sum(ext_group(hprev, a), hom_group(hr, a));
    return out;
}

GroupHom pullback_hom(const CubicalComplex& cx, const Automorphism& a, int r, const Int& m) {
    IntMatrix t = cx.automorphism_action(a, r).transpose();
    IntMatrix t_up = cx.automorphism_action(a, r + 1).transpose();
    if (!(cx.coboundary(r) * t == t_up * cx.coboundary(r)))
        throw Error("NotChainMap", "pullback does not commute with the coboundary");
    FGAbGroup h = cohomology_presented(cx, r, m);
    return induced_hom(t, h, h);
}

GroupHom pushforward_hom(const CubicalComplex& cx, const Automorphism& a, int r) {
    IntMatrix t = cx.automorphism_action(a, r);
    IntMatrix t_down = cx.automorphism_action(a, r - 1);
    if (r >= 1 && !(t_down * cx.boundary(r) == cx.boundary(r) * t))
        throw Error("NotChainMap", "action does not commute with the boundary");
    FGAbGroup h = homology(cx, r);
    return induced_hom(t, h, h);
}

}  // namespace kgl
