#include "bianchi/pipeline.hpp"

#include <json.hpp>

#include <chrono>
#include <sstream>

namespace bianchi {

Rational default_height(long d) {
    ring_params(d);
    switch (d) {
        case -2:
        case -7: return Rational(1, 2);
        case -11: return Rational(422, 1000);
        case -19: return Rational(3218, 10000);
        case -43: return Rational(207, 1000);
        case -67: return Rational(169, 1000);
        default: return Rational(982, 10000);
    }
}

std::vector<Rational> auto_height_schedule() {
    std::vector<Rational> out;
    Rational h(1, 2);
    const Rational floor(1, 50);
    while (h >= floor) {
        out.push_back(h);
        h *= Rational(9, 10);
        h.canonicalize();
    }
    return out;
}

namespace {

class Stopwatch {
public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}
    double lap() {
        auto now = std::chrono::steady_clock::now();
        double s = std::chrono::duration<double>(now - start_).count();
        start_ = now;
        return s;
    }

private:
    std::chrono::steady_clock::time_point start_;
};

}  // namespace

RunResult run_pipeline(const RunConfig& cfg) {
    RingParams params = ring_params(cfg.d);
    if (cfg.grid < 1) throw std::invalid_argument("grid resolution must be >= 1");
    std::vector<Rational> heights;
    if (cfg.auto_height)
        heights = auto_height_schedule();
    else
        heights.push_back(cfg.height ? *cfg.height : default_height(cfg.d));
    for (auto& h : heights) {
        h.canonicalize();
        if (sgn(h) <= 0) throw std::invalid_argument("height must be positive");
    }

    RunResult out;
    RunReport& rep = out.report;
    rep.d = cfg.d;
    Stopwatch sw;
    CoverOptions copts{cfg.grid, std::max(cfg.grid, cfg.max_grid), cfg.workers};
    bool covered = false;
    for (const auto& h : heights) {
        rep.heights_tried.push_back(h);
        auto [gens, cover] = find_generators(params, h, copts);
        out.gens = std::move(gens);
        out.cover = std::move(cover);
        if (out.cover.covered) {
            covered = true;
            break;
        }
    }
    rep.timings.push_back({"generators+cover", sw.lap()});
    rep.height = out.gens.height();
    rep.generators = out.gens.size();
    rep.raw_generators = out.gens.size() + 2;
    rep.depth = out.gens.depth();
    rep.horizon = out.gens.horizon();
    rep.grid_used = out.cover.n;
    if (!covered) {
        std::ostringstream msg;
        msg << "coverage not certified for d = " << cfg.d << " at height " << rep.height << " ("
            << out.cover.uncovered_cells.size() << " uncovered cells at grid " << out.cover.n << ")";
        throw CoverFailure(msg.str());
    }

    out.raw = find_relations(out.gens, cfg.workers);
    for (const auto& r : out.raw)
        (r.kind == RelationKind::Inversion ? rep.inversion_relations : rep.triple_relations)++;
    rep.timings.push_back({"relations", sw.lap()});

    out.presentation = relator_words(out.raw, out.gens);
    rep.raw_relations = out.presentation.relators.size();
    rep.abelianization = abelianize(out.presentation);
    rep.timings.push_back({"abelianization", sw.lap()});

    if (cfg.cleanup) {
        out.cleaned = tietze_cleanup(out.presentation, cfg.cleanup_options);
        rep.cleaned_generators = out.cleaned->generators.size();
        rep.cleaned_relators = out.cleaned->relators.size();
        rep.cleaned_abelianization = abelianize(*out.cleaned);
        rep.timings.push_back({"cleanup", sw.lap()});
    }
    return out;
}

std::string report_json(const RunReport& r) {
    nlohmann::ordered_json j;
    j["d"] = r.d;
    j["height"] = r.height.get_str();
    j["height_decimal"] = r.height.get_d();
    std::vector<std::string> tried;
    for (const auto& h : r.heights_tried) tried.push_back(h.get_str());
    j["heights_tried"] = tried;
    j["generators"] = r.generators;
    j["raw_generators"] = r.raw_generators;
    j["raw_relations"] = r.raw_relations;
    j["inversion_relations"] = r.inversion_relations;
    j["triple_relations"] = r.triple_relations;
    j["depth"] = r.depth.get_str();
    j["norm_horizon"] = r.horizon.get_str();
    j["grid"] = r.grid_used;
    j["abelianization"] = to_string(r.abelianization);
    std::vector<std::string> tors;
    for (const auto& t : r.abelianization.torsion) tors.push_back(t.get_str());
    j["torsion"] = tors;
    j["free_rank"] = r.abelianization.free_rank;
    if (r.cleaned_generators) {
        j["cleaned_generators"] = *r.cleaned_generators;
        j["cleaned_relators"] = *r.cleaned_relators;
        j["cleaned_abelianization"] = to_string(*r.cleaned_abelianization);
    }
    nlohmann::ordered_json t;
    for (const auto& p : r.timings) t[p.phase] = p.seconds;
    j["timings_seconds"] = t;
    return j.dump(2) + "\n";
}

std::string report_text(const RunReport& r) {
    std::ostringstream os;
    os << "d                 " << r.d << "\n";
    os << "height            " << r.height << " (" << r.height.get_d() << ")\n";
    os << "generators        " << r.generators << " (+2 parabolic = " << r.raw_generators << ")\n";
    os << "raw relations     " << r.raw_relations << " (" << r.inversion_relations << " inversion, "
       << r.triple_relations << " triple, 1 commutator; distinct words)\n";
    os << "depth             " << r.depth << " (norm horizon " << r.horizon << ")\n";
    os << "cover grid        " << r.grid_used << " x " << r.grid_used << "\n";
    os << "abelianization    " << to_string(r.abelianization) << "\n";
    if (r.cleaned_generators)
        os << "after cleanup     " << *r.cleaned_generators << " generators, " << *r.cleaned_relators
           << " relators, abelianization " << to_string(*r.cleaned_abelianization) << "\n";
    for (const auto& p : r.timings) os << "time " << p.phase << ": " << p.seconds << " s\n";
    return os.str();
}

}  // namespace bianchi
