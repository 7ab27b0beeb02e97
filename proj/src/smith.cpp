#include "kgl/smith.hpp"

#include <random>
#include <stdexcept>

namespace kgl {

namespace {

Int abs_int(const Int& x) { return x < 0 ? Int(-x) : x; }

// g = gcd(a, b) >= 0 with p a + q b = g
Int xgcd(const Int& a, const Int& b, Int& p, Int& q) {
    Int old_r = a, r = b;
    Int old_p = 1, pp = 0;
    Int old_q = 0, qq = 1;
    while (r != 0) {
        Int quot = old_r / r;
        Int tmp = old_r - quot * r;
        old_r = r;
        r = tmp;
        tmp = old_p - quot * pp;
        old_p = pp;
        pp = tmp;
        tmp = old_q - quot * qq;
        old_q = qq;
        qq = tmp;
    }
    if (old_r < 0) {
        old_r = -old_r;
        old_p = -old_p;
        old_q = -old_q;
    }
    p = old_p;
    q = old_q;
    return old_r;
}

struct Worker {
    IntMatrix a, u, uinv, v, vinv;
    PivotRule rule;
    std::mt19937_64 rng;

    Worker(const IntMatrix& m, PivotRule r, std::uint64_t seed)
        : a(m),
          u(IntMatrix::identity(m.rows())),
          uinv(IntMatrix::identity(m.rows())),
          v(IntMatrix::identity(m.cols())),
          vinv(IntMatrix::identity(m.cols())),
          rule(r),
          rng(seed) {}

    void row_swap(std::size_t i, std::size_t j) {
        a.swap_rows(i, j);
        u.swap_rows(i, j);
        uinv.swap_cols(i, j);
    }
    void col_swap(std::size_t i, std::size_t j) {
        a.swap_cols(i, j);
        v.swap_cols(i, j);
        vinv.swap_rows(i, j);
    }
    // row i -= q * row j
    void row_sub(std::size_t i, std::size_t j, const Int& q) {
        a.add_row_multiple(i, j, -q);
        u.add_row_multiple(i, j, -q);
        uinv.add_col_multiple(j, i, q);
    }
    void row_negate(std::size_t i) {
        a.negate_row(i);
        u.negate_row(i);
        uinv.negate_col(i);
    }

    // Unimodular two-row transform making a(s, s) = gcd and a(i, s) = 0.
    void rows_gcd_combine(std::size_t s, std::size_t i) {
        const Int as = a.at(s, s), ai = a.at(i, s);
        if (ai == 0) return;
        if (as != 0 && ai % as == 0) {
            row_sub(i, s, ai / as);
            return;
        }
        Int p, q;
        Int g = xgcd(as, ai, p, q);
        Int su = as / g, sv = ai / g;
        // rows (s, i) <- (p s + q i, -sv s + su i); inverse (su, -q; sv, p)
        auto combine = [&](IntMatrix& m) {
            for (std::size_t c = 0; c < m.cols(); ++c) {
                Int xs = m.at(s, c), xi = m.at(i, c);
                m.at(s, c) = p * xs + q * xi;
                m.at(i, c) = su * xi - sv * xs;
            }
        };
        combine(a);
        combine(u);
        for (std::size_t r = 0; r < uinv.rows(); ++r) {
            Int xs = uinv.at(r, s), xi = uinv.at(r, i);
            uinv.at(r, s) = su * xs + sv * xi;
            uinv.at(r, i) = p * xi - q * xs;
        }
    }

    // Mirror transform on columns (s, j).
    void cols_gcd_combine(std::size_t s, std::size_t j) {
        const Int as = a.at(s, s), aj = a.at(s, j);
        if (aj == 0) return;
        if (as != 0 && aj % as == 0) {
            Int q = aj / as;
            a.add_col_multiple(j, s, -q);
            v.add_col_multiple(j, s, -q);
            vinv.add_row_multiple(s, j, q);
            return;
        }
        Int p, q;
        Int g = xgcd(as, aj, p, q);
        Int su = as / g, sv = aj / g;
        auto combine = [&](IntMatrix& m) {
            for (std::size_t r = 0; r < m.rows(); ++r) {
                Int xs = m.at(r, s), xj = m.at(r, j);
                m.at(r, s) = p * xs + q * xj;
                m.at(r, j) = su * xj - sv * xs;
            }
        };
        combine(a);
        combine(v);
        for (std::size_t c = 0; c < vinv.cols(); ++c) {
            Int xs = vinv.at(s, c), xj = vinv.at(j, c);
            vinv.at(s, c) = su * xs + sv * xj;
            vinv.at(j, c) = p * xj - q * xs;
        }
    }

    bool pick_pivot(std::size_t s, std::size_t& pi, std::size_t& pj) {
        std::vector<std::pair<std::size_t, std::size_t>> nz;
        Int best = 0;
        bool found = false;
        for (std::size_t i = s; i < a.rows(); ++i)
            for (std::size_t j = s; j < a.cols(); ++j) {
                if (a.at(i, j) == 0) continue;
                if (rule == PivotRule::Randomized) {
                    nz.emplace_back(i, j);
                } else {
                    Int m = abs_int(a.at(i, j));
                    if (!found || m < best) {
                        best = m;
                        pi = i;
                        pj = j;
                        found = true;
                    }
                }
            }
        if (rule == PivotRule::Randomized) {
            if (nz.empty()) return false;
            auto pick = nz[std::uniform_int_distribution<std::size_t>(0, nz.size() - 1)(rng)];
            pi = pick.first;
            pj = pick.second;
            return true;
        }
        return found;
    }

    // true once row s and column s are zero outside (s, s)
    bool cleared(std::size_t s) const {
        for (std::size_t i = s + 1; i < a.rows(); ++i)
            if (a.at(i, s) != 0) return false;
        for (std::size_t j = s + 1; j < a.cols(); ++j)
            if (a.at(s, j) != 0) return false;
        return true;
    }

    void clear_cross(std::size_t s) {
        while (!cleared(s)) {
            for (std::size_t i = s + 1; i < a.rows(); ++i) rows_gcd_combine(s, i);
            for (std::size_t j = s + 1; j < a.cols(); ++j) cols_gcd_combine(s, j);
        }
    }

    void run() {
        const std::size_t n = std::min(a.rows(), a.cols());
        for (std::size_t s = 0; s < n; ++s) {
            std::size_t pi = s, pj = s;
            if (!pick_pivot(s, pi, pj)) break;  // submatrix zero
            row_swap(s, pi);
            col_swap(s, pj);
            clear_cross(s);
            // enforce divisibility of the trailing block by the pivot
            bool again = true;
            while (again) {
                again = false;
                for (std::size_t i = s + 1; i < a.rows() && !again; ++i)
                    for (std::size_t j = s + 1; j < a.cols() && !again; ++j)
                        if (a.at(i, j) % a.at(s, s) != 0) {
                            row_sub(s, i, Int(-1));  // fold in the offending row
                            clear_cross(s);
                            again = true;
                        }
            }
            if (a.at(s, s) < 0) row_negate(s);
        }
    }
};

}  // namespace

Smith smith_normal_form(const IntMatrix& a, PivotRule rule, std::uint64_t seed) {
    Worker w(a, rule, seed);
    w.run();
    Smith s;
    s.U = std::move(w.u);
    s.Uinv = std::move(w.uinv);
    s.V = std::move(w.v);
    s.Vinv = std::move(w.vinv);
    s.D = std::move(w.a);
    const std::size_t n = std::min(s.D.rows(), s.D.cols());
    s.diagonal.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        s.diagonal[i] = s.D.at(i, i);
        if (s.diagonal[i] != 0) s.rank = i + 1;
    }
    return s;
}

LinearSolver::LinearSolver(const IntMatrix& a)
    : rows_(a.rows()), cols_(a.cols()), snf_(smith_normal_form(a)) {}

std::optional<IntVec> LinearSolver::solve(const IntVec& b) const {
    if (b.size() != rows_) throw std::invalid_argument("solve: dimension mismatch");
    IntVec ub = snf_.U.apply(b);
    IntVec z(cols_, Int(0));
    const std::size_t n = std::min(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        if (i < n && snf_.diagonal[i] != 0) {
            if (ub[i] % snf_.diagonal[i] != 0) return std::nullopt;
            z[i] = ub[i] / snf_.diagonal[i];
        } else if (ub[i] != 0) {
            return std::nullopt;
        }
    }
    return snf_.V.apply(z);
}

std::optional<IntVec> solve_integer(const IntMatrix& a, const IntVec& b) {
    return LinearSolver(a).solve(b);
}

std::optional<IntVec> solve_mod(const IntMatrix& a, const IntVec& b, const Int& m) {
    if (m < 2) throw std::invalid_argument("solve_mod: modulus must be >= 2");
    IntMatrix stacked = a.hstack(IntMatrix::identity(a.rows()).scaled(m));
    auto x = solve_integer(stacked, b);
    if (!x) return std::nullopt;
    IntVec r(a.cols());
    for (std::size_t j = 0; j < a.cols(); ++j) r[j] = mod_floor((*x)[j], m);
    return r;
}

IntMatrix kernel_basis(const IntMatrix& a) {
    Smith s = smith_normal_form(a);
    return s.V.take_columns(s.rank, a.cols() - s.rank);
}

IntMatrix kernel_mod(const IntMatrix& a, const Int& m) {
    if (m == 0) return kernel_basis(a);
    IntMatrix stacked = a.hstack(IntMatrix::identity(a.rows()).scaled(m));
    IntMatrix full = kernel_basis(stacked);
    // project away the auxiliary coordinates; projections of a basis generate
    IntMatrix gens(a.cols(), full.cols());
    for (std::size_t i = 0; i < a.cols(); ++i)
        for (std::size_t j = 0; j < full.cols(); ++j) gens.at(i, j) = full.at(i, j);
    return column_lattice_basis(gens);
}

IntMatrix column_lattice_basis(const IntMatrix& gens) {
    Smith s = smith_normal_form(gens);
    // im(A) = im(Uinv * D); nonzero columns of Uinv * D are independent
    std::vector<IntVec> cols;
    for (std::size_t j = 0; j < s.rank; ++j) {
        IntVec c = s.Uinv.column(j);
        cols.push_back(vec_scaled(c, s.diagonal[j]));
    }
    return IntMatrix::from_columns(gens.rows(), cols);
}

bool lattice_contains(const IntMatrix& gens, const IntVec& v) {
    return solve_integer(gens, v).has_value();
}

bool lattice_subset(const IntMatrix& sub, const IntMatrix& super) {
    LinearSolver solver(super);
    for (std::size_t j = 0; j < sub.cols(); ++j)
        if (!solver.solve(sub.column(j))) return false;
    return true;
}

bool lattice_equal(const IntMatrix& a, const IntMatrix& b) {
    return lattice_subset(a, b) && lattice_subset(b, a);
}

}  // namespace kgl
