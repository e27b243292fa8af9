#include "bianchi/smith.hpp"

#include "bianchi/presentation.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace bianchi {

namespace {

// In-place Smith reduction of `a` (rows x cols); `u` and `v` accumulate the
// row and column operations when non-null.
void reduce(IntMatrix& a, std::size_t cols, IntMatrix* u, IntMatrix* v) {
    const std::size_t rows = a.size();
    auto swap_rows = [&](std::size_t i, std::size_t j) {
        std::swap(a[i], a[j]);
        if (u) std::swap((*u)[i], (*u)[j]);
    };
    auto swap_cols = [&](std::size_t i, std::size_t j) {
        for (auto& row : a) std::swap(row[i], row[j]);
        if (v)
            for (auto& row : *v) std::swap(row[i], row[j]);
    };
    // row_i += q * row_k
    auto add_row = [&](std::size_t i, std::size_t k, const Integer& q) {
        for (std::size_t j = 0; j < cols; ++j)
            if (a[k][j] != 0) a[i][j] += q * a[k][j];
        if (u)
            for (std::size_t j = 0; j < rows; ++j)
                if ((*u)[k][j] != 0) (*u)[i][j] += q * (*u)[k][j];
    };
    auto add_col = [&](std::size_t i, std::size_t k, const Integer& q) {
        for (std::size_t r = 0; r < rows; ++r)
            if (a[r][k] != 0) a[r][i] += q * a[r][k];
        if (v)
            for (std::size_t r = 0; r < cols; ++r)
                if ((*v)[r][k] != 0) (*v)[r][i] += q * (*v)[r][k];
    };

    // Nearest-integer quotient, so remainders are at most |p|/2.
    Integer q, r;
    auto nearest = [&](const Integer& x, const Integer& p) {
        mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), x.get_mpz_t(), p.get_mpz_t());
        r *= 2;
        if (mpz_cmpabs(r.get_mpz_t(), p.get_mpz_t()) > 0) q += sgn(r) * sgn(p);
        return q;
    };

    for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
        bool done = false;
        while (!done) {
            // Smallest nonzero entry of the trailing block becomes the pivot;
            // re-chosen every round to keep the entries small.
            std::size_t pi = rows, pj = cols;
            for (std::size_t i = t; i < rows; ++i)
                for (std::size_t j = t; j < cols; ++j)
                    if (a[i][j] != 0 && (pi == rows || mpz_cmpabs(a[i][j].get_mpz_t(), a[pi][pj].get_mpz_t()) < 0)) {
                        pi = i;
                        pj = j;
                    }
            if (pi == rows) break;
            if (pi != t) swap_rows(t, pi);
            if (pj != t) swap_cols(t, pj);

            done = true;
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (a[i][t] == 0) continue;
                add_row(i, t, -nearest(a[i][t], a[t][t]));
                if (a[i][t] != 0) done = false;
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (a[t][j] == 0) continue;
                add_col(j, t, -nearest(a[t][j], a[t][t]));
                if (a[t][j] != 0) done = false;
            }
            if (!done) continue;
            // The pivot must divide the whole trailing block.
            for (std::size_t i = t + 1; i < rows && done; ++i)
                for (std::size_t j = t + 1; j < cols; ++j)
                    if (a[i][j] != 0 && !mpz_divisible_p(a[i][j].get_mpz_t(), a[t][t].get_mpz_t())) {
                        add_row(t, i, 1);
                        done = false;
                        break;
                    }
        }
        if (a[t][t] < 0) {
            for (auto& x : a[t]) x = -x;
            if (u)
                for (auto& x : (*u)[t]) x = -x;
        }
    }
}

IntMatrix identity(std::size_t n) {
    IntMatrix m(n, std::vector<Integer>(n, 0));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

std::vector<Integer> diagonal_of(const IntMatrix& a, std::size_t cols) {
    std::vector<Integer> out;
    for (std::size_t i = 0; i < std::min(a.size(), cols); ++i)
        if (a[i][i] != 0) out.push_back(a[i][i]);
    return out;
}

}  // namespace

SmithForm smith_normal_form(const IntMatrix& m, std::size_t cols) {
    SmithForm f;
    f.diagonal = m;
    for (auto& row : f.diagonal) row.resize(cols, 0);
    f.left = identity(m.size());
    f.right = identity(cols);
    reduce(f.diagonal, cols, &f.left, &f.right);
    f.invariants = diagonal_of(f.diagonal, cols);
    return f;
}

std::vector<Integer> invariant_factors(IntMatrix m, std::size_t cols) {
    for (auto& row : m) row.resize(cols, 0);
    reduce(m, cols, nullptr, nullptr);
    return diagonal_of(m, cols);
}

namespace {

const Integer* entry(const SparseRow& row, std::size_t col) {
    auto it = std::lower_bound(row.begin(), row.end(), col,
                               [](const auto& e, std::size_t c) { return e.first < c; });
    return it != row.end() && it->first == col ? &it->second : nullptr;
}

// a - q * b
SparseRow axpy(const SparseRow& a, const Integer& q, const SparseRow& b) {
    SparseRow out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
            out.push_back(a[i++]);
        } else if (i == a.size() || b[j].first < a[i].first) {
            out.emplace_back(b[j].first, -q * b[j].second);
            ++j;
        } else {
            Integer v = a[i].second - q * b[j].second;
            if (v != 0) out.emplace_back(a[i].first, std::move(v));
            ++i;
            ++j;
        }
    }
    return out;
}

}  // namespace

std::vector<Integer> sparse_invariant_factors(std::vector<SparseRow> rows, std::size_t cols) {
    {
        std::set<SparseRow> uniq;
        std::vector<SparseRow> kept;
        for (auto& r : rows) {
            if (r.empty()) continue;
            for (auto& e : r)
                if (e.first >= cols) throw std::out_of_range("sparse row entry outside matrix");
            if (uniq.insert(r).second) kept.push_back(std::move(r));
        }
        rows = std::move(kept);
    }

    std::vector<std::set<std::size_t>> col_rows(cols);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (const auto& e : rows[i]) col_rows[e.first].insert(i);
    std::vector<bool> row_alive(rows.size(), true);

    std::size_t units = 0;
    std::vector<std::size_t> order(cols);
    while (true) {
        for (std::size_t j = 0; j < cols; ++j) order[j] = j;
        std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
            if (col_rows[x].size() != col_rows[y].size()) return col_rows[x].size() < col_rows[y].size();
            return x < y;
        });
        std::size_t prow = rows.size(), pcol = cols;
        for (std::size_t j : order) {
            if (col_rows[j].empty()) continue;
            for (std::size_t i : col_rows[j]) {
                const Integer* v = entry(rows[i], j);
                if (mpz_cmpabs_ui(v->get_mpz_t(), 1) == 0 && (prow == rows.size() || rows[i].size() < rows[prow].size()))
                    prow = i;
            }
            if (prow != rows.size()) {
                pcol = j;
                break;
            }
        }
        if (pcol == cols) break;

        const SparseRow pivot = rows[prow];
        const Integer pv = *entry(pivot, pcol);
        std::vector<std::size_t> targets(col_rows[pcol].begin(), col_rows[pcol].end());
        for (std::size_t k : targets) {
            if (k == prow) continue;
            Integer q = *entry(rows[k], pcol) * pv;  // pv = +-1, so a/pv = a*pv
            SparseRow updated = axpy(rows[k], q, pivot);
            for (const auto& e : rows[k]) col_rows[e.first].erase(k);
            rows[k] = std::move(updated);
            for (const auto& e : rows[k]) col_rows[e.first].insert(k);
            if (rows[k].empty()) row_alive[k] = false;
        }
        for (const auto& e : pivot) col_rows[e.first].erase(prow);
        rows[prow].clear();
        row_alive[prow] = false;
        ++units;
    }

    std::vector<std::size_t> live_cols;
    for (std::size_t j = 0; j < cols; ++j)
        if (!col_rows[j].empty()) live_cols.push_back(j);
    std::vector<std::size_t> col_pos(cols, 0);
    for (std::size_t k = 0; k < live_cols.size(); ++k) col_pos[live_cols[k]] = k;

    std::set<SparseRow> uniq;
    IntMatrix dense;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (!row_alive[i] || rows[i].empty() || !uniq.insert(rows[i]).second) continue;
        std::vector<Integer> d(live_cols.size(), 0);
        for (const auto& e : rows[i]) d[col_pos[e.first]] = e.second;
        dense.push_back(std::move(d));
    }
    std::vector<Integer> out(units, Integer(1));
    for (auto& f : invariant_factors(std::move(dense), live_cols.size())) out.push_back(std::move(f));
    return out;
}

AbelianInvariants abelian_invariants(std::vector<SparseRow> rows, std::size_t cols) {
    auto factors = sparse_invariant_factors(std::move(rows), cols);
    AbelianInvariants ab;
    for (auto& f : factors)
        if (f > 1) ab.torsion.push_back(f);
    std::sort(ab.torsion.begin(), ab.torsion.end());
    ab.free_rank = static_cast<long>(cols) - static_cast<long>(factors.size());
    return ab;
}

AbelianInvariants abelianize(const Presentation& p) {
    std::vector<SparseRow> rows;
    rows.reserve(p.relators.size());
    for (const auto& w : p.relators) {
        auto sums = exponent_sums(w, p.generators.size());
        SparseRow row;
        for (std::size_t j = 0; j < sums.size(); ++j)
            if (sums[j] != 0) row.emplace_back(j, Integer(sums[j]));
        rows.push_back(std::move(row));
    }
    return abelian_invariants(std::move(rows), p.generators.size());
}

std::string to_string(const AbelianInvariants& ab) {
    std::ostringstream os;
    bool first = true;
    for (const auto& t : ab.torsion) {
        os << (first ? "" : " x ") << "C" << t;
        first = false;
    }
    if (ab.free_rank > 0) {
        os << (first ? "" : " x ") << "Cinf";
        if (ab.free_rank > 1) os << "^" << ab.free_rank;
        first = false;
    }
    if (first) os << "1";
    return os.str();
}

}  // namespace bianchi
