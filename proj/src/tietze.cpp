#include "bianchi/tietze.hpp"

#include <algorithm>
#include <set>
#include <tuple>

namespace bianchi {

namespace {

// Start index of the lexicographically least rotation of w.
std::size_t least_rotation(const Word& w) {
    const std::size_t n = w.size();
    std::size_t best = 0;
    for (std::size_t k = 1; k < n; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            const Letter& a = w[(k + i) % n];
            const Letter& b = w[(best + i) % n];
            if (a == b) continue;
            if (a < b) best = k;
            break;
        }
    }
    return best;
}

Word rotated(const Word& w, std::size_t k) {
    Word out(w.begin() + static_cast<long>(k), w.end());
    out.insert(out.end(), w.begin(), w.begin() + static_cast<long>(k));
    return out;
}

}  // namespace

Word canonical_relator(const Word& w) {
    Word r = cyclic_reduce(w);
    if (r.empty()) return r;
    Word inv = cyclic_reduce(inverse(r));
    Word a = rotated(r, least_rotation(r));
    Word b = rotated(inv, least_rotation(inv));
    return std::min(a, b);
}

namespace {

// Cyclic reduction, removal of empty relators and of duplicates up to
// rotation and inversion. Returns true if anything changed.
bool normalize(std::vector<Word>& rels) {
    bool changed = false;
    std::set<Word> seen;
    std::vector<Word> out;
    out.reserve(rels.size());
    for (auto& w : rels) {
        Word r = cyclic_reduce(w);
        if (r != w) changed = true;
        if (r.empty() || !seen.insert(canonical_relator(r)).second) {
            changed = true;
            continue;
        }
        out.push_back(std::move(r));
    }
    rels = std::move(out);
    return changed;
}

struct Candidate {
    long growth;
    long sub_len;
    std::size_t gen;
    std::size_t rel;
    std::size_t pos;
};

Word substitute(const Word& w, std::size_t gen, const Word& value) {
    Word out;
    for (const auto& l : w) {
        if (l.gen == gen)
            append(out, power(value, l.exp));
        else
            append(out, l.gen, l.exp);
    }
    return out;
}

}  // namespace

Presentation tietze_cleanup(const Presentation& input, const TietzeOptions& opts) {
    Presentation p = input;
    p.corrections.clear();
    normalize(p.relators);

    int idle = 0;
    while (idle < opts.budget) {
        const std::size_t ngen = p.generators.size();
        std::vector<long> occ_len(ngen, 0);
        std::vector<std::vector<std::size_t>> where(ngen);
        for (std::size_t i = 0; i < p.relators.size(); ++i) {
            for (const auto& l : p.relators[i]) {
                occ_len[l.gen] += l.exp < 0 ? -l.exp : l.exp;
                if (where[l.gen].empty() || where[l.gen].back() != i) where[l.gen].push_back(i);
            }
        }

        std::vector<Candidate> cands;
        for (std::size_t i = 0; i < p.relators.size(); ++i) {
            const Word& r = p.relators[i];
            long len = word_length(r);
            if (len - 1 > opts.max_substitution) continue;
            for (std::size_t k = 0; k < r.size(); ++k) {
                if (r[k].exp != 1 && r[k].exp != -1) continue;
                std::size_t g = r[k].gen;
                bool once = std::count_if(r.begin(), r.end(), [&](const Letter& l) { return l.gen == g; }) == 1;
                if (!once) continue;
                long sub = len - 1;
                cands.push_back({(occ_len[g] - 1) * (sub - 1), sub, g, i, k});
            }
        }
        std::sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) {
            return std::tie(a.growth, a.sub_len, a.gen, a.rel, a.pos) <
                   std::tie(b.growth, b.sub_len, b.gen, b.rel, b.pos);
        });

        std::vector<bool> touched(p.relators.size(), false), dropped(p.relators.size(), false);
        std::vector<bool> eliminated(ngen, false);
        // Generators copied into other relators this pass; `where` is stale for them.
        std::vector<bool> blocked(ngen, false);
        bool progress = false;
        for (const auto& c : cands) {
            if (eliminated[c.gen] || blocked[c.gen] || touched[c.rel]) continue;
            const Word& r = p.relators[c.rel];
            // r ~ g^e Y X with r = X g^e Y; so g^e = (Y X)^-1.
            Word yx(r.begin() + static_cast<long>(c.pos) + 1, r.end());
            yx.insert(yx.end(), r.begin(), r.begin() + static_cast<long>(c.pos));
            Word value = r[c.pos].exp == 1 ? inverse(yx) : yx;

            bool fits = std::none_of(where[c.gen].begin(), where[c.gen].end(), [&](std::size_t i) {
                return i != c.rel && !dropped[i] && touched[i];
            });
            if (!fits) continue;
            std::vector<std::pair<std::size_t, Word>> updates;
            for (std::size_t i : where[c.gen]) {
                if (i == c.rel || dropped[i]) continue;
                Word nw = free_reduce(substitute(p.relators[i], c.gen, value));
                if (word_length(nw) > opts.max_relator) {
                    fits = false;
                    break;
                }
                updates.emplace_back(i, std::move(nw));
            }
            if (!fits) continue;
            for (auto& [i, nw] : updates) {
                p.relators[i] = std::move(nw);
                touched[i] = true;
            }
            for (const auto& l : value) blocked[l.gen] = true;
            dropped[c.rel] = true;
            touched[c.rel] = true;
            eliminated[c.gen] = true;
            progress = true;
        }

        if (progress) {
            std::vector<std::size_t> remap(ngen, 0);
            std::vector<Generator> gens;
            for (std::size_t g = 0; g < ngen; ++g) {
                if (eliminated[g]) continue;
                remap[g] = gens.size();
                gens.push_back(std::move(p.generators[g]));
            }
            std::vector<Word> rels;
            for (std::size_t i = 0; i < p.relators.size(); ++i) {
                if (dropped[i]) continue;
                Word w;
                for (const auto& l : p.relators[i]) w.push_back({remap[l.gen], l.exp});
                rels.push_back(std::move(w));
            }
            p.generators = std::move(gens);
            p.relators = std::move(rels);
        }
        bool changed = normalize(p.relators);
        idle = (progress || changed) ? 0 : idle + 1;
    }
    return p;
}

}  // namespace bianchi
