// Command-line front end: compute presentations of PSL2(O_d), check the
// horoball cover, and verify / abelianize / export presentation files.

#include "bianchi/pipeline.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

namespace fs = std::filesystem;
using namespace bianchi;

namespace {

enum Exit : int {
    kOk = 0,
    kInvalidInput = 2,
    kCoverFailure = 3,
    kVerifyFailure = 4,
    kInternalError = 70,
};

struct Options {
    long d = 0;
    std::string height;
    bool auto_height = false;
    long grid = 100;
    long max_grid = 1600;
    unsigned workers = 1;
    std::string out = ".";
    std::string figure;
    bool cleanup = false;
    bool export_cas = false;
    bool json = false;
    std::vector<std::string> files;
    std::string cas_path;
    std::string native_path;
};

std::string tag(long d) { return "d" + std::to_string(-d); }

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
}

void write_cas_file(const fs::path& path, const Presentation& p) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    write_cas(out, p);
}

int cmd_compute(const Options& o) {
    RunConfig cfg;
    cfg.d = o.d;
    if (!o.height.empty()) cfg.height = parse_rational(o.height);
    cfg.auto_height = o.auto_height;
    cfg.grid = o.grid;
    cfg.max_grid = o.max_grid;
    cfg.workers = o.workers;
    cfg.cleanup = o.cleanup;

    RunResult r;
    try {
        r = run_pipeline(cfg);
    } catch (const CoverFailure& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kCoverFailure;
    }
    fs::path dir(o.out);
    fs::create_directories(dir);
    if (!o.figure.empty()) render_figure(r.gens.params(), r.gens.circles(), r.cover, o.figure);
    write_native_file(dir / ("presentation_" + tag(o.d) + ".txt"), r.presentation);
    write_text(dir / ("report_" + tag(o.d) + ".json"), report_json(r.report));
    if (r.cleaned) write_native_file(dir / ("presentation_" + tag(o.d) + "_cleaned.txt"), *r.cleaned);
    if (o.export_cas)
        write_cas_file(dir / ("presentation_" + tag(o.d) + ".mgm"), r.cleaned ? *r.cleaned : r.presentation);

    std::cout << (o.json ? report_json(r.report) : report_text(r.report));
    return kOk;
}

int cmd_check_cover(const Options& o) {
    RingParams p = ring_params(o.d);
    Rational h = o.height.empty() ? default_height(o.d) : parse_rational(o.height);
    auto [gens, cover] = find_generators(p, h, {o.grid, std::max(o.grid, o.max_grid), o.workers});
    if (!o.figure.empty()) render_figure(p, gens.circles(), cover, o.figure);
    std::cout << "d " << o.d << " height " << h << " generators " << gens.size() << " grid " << cover.n
              << (cover.covered ? " covered" : " NOT covered") << "\n";
    if (!cover.covered) {
        std::size_t shown = 0;
        for (const auto& c : cover.uncovered_cells) {
            if (shown++ == 20) {
                std::cout << "  ... " << cover.uncovered_cells.size() - 20 << " more\n";
                break;
            }
            std::cout << "  uncovered cell (" << c.i << ", " << c.j << ")\n";
        }
        return kCoverFailure;
    }
    return kOk;
}

int cmd_verify(const Options& o) {
    int rc = kOk;
    for (const auto& file : o.files) {
        Presentation p = read_native_file(file);
        auto names = p.names();
        if (p.relators.empty()) std::cerr << "warning: " << file << " has no relators; nothing to verify\n";
        std::size_t bad = 0;
        for (std::size_t k = 0; k < p.relators.size(); ++k) {
            bool ok = evaluate_word(p.relators[k], p.generators).is_identity();
            const auto* fix = k < p.corrections.size() && p.corrections[k] ? &*p.corrections[k] : nullptr;
            if (ok && !fix) continue;
            if (!ok && fix && evaluate_word(*fix, p.generators).is_identity()) {
                std::cout << file << ": relator " << k + 1 << " SUSPECTED TYPO: " << format_word(p.relators[k], names)
                          << " (corrected: " << format_word(*fix, names) << ")\n";
                continue;
            }
            ++bad;
            std::cout << file << ": relator " << k + 1 << " FAILS: " << format_word(p.relators[k], names);
            if (fix) std::cout << (ok ? " (annotated as typo but holds)" : " (correction also fails)");
            std::cout << "\n";
        }
        std::cout << file << ": " << p.relators.size() - bad << "/" << p.relators.size() << " relators ok\n";
        if (bad) rc = kVerifyFailure;
    }
    return rc;
}

Presentation corrected(Presentation p) {
    for (std::size_t k = 0; k < p.corrections.size(); ++k)
        if (p.corrections[k]) p.relators[k] = *p.corrections[k];
    p.corrections.clear();
    return p;
}

int cmd_abelianize(const Options& o) {
    for (const auto& file : o.files) {
        Presentation p = corrected(read_native_file(file));
        if (o.cleanup) p = tietze_cleanup(p);
        std::cout << file << ": " << to_string(abelianize(p)) << "\n";
    }
    return kOk;
}

int cmd_export(const Options& o) {
    Presentation p = corrected(read_native_file(o.files.front()));
    if (o.cleanup) p = tietze_cleanup(p);
    if (!o.native_path.empty()) write_native_file(o.native_path, p);
    if (!o.cas_path.empty())
        write_cas_file(o.cas_path, p);
    else if (o.native_path.empty())
        write_cas(std::cout, p);
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Presentations of Bianchi groups PSL2(O_d) via horoball covers"};
    app.require_subcommand(1);
    Options o;

    auto add_run_opts = [&](CLI::App* sub) {
        sub->add_option("--d", o.d, "discriminant: -2 -7 -11 -19 -43 -67 -163")->required();
        sub->add_option("--height", o.height, "height of the main horoball, exact (p/q or decimal)");
        sub->add_option("--grid", o.grid, "initial cover grid resolution")->check(CLI::PositiveNumber);
        sub->add_option("--max-grid", o.max_grid, "largest grid tried before giving up")->check(CLI::PositiveNumber);
        sub->add_option("--workers", o.workers, "worker threads")->check(CLI::Range(1u, 256u));
        sub->add_option("--figure", o.figure, "write the cover as SVG");
    };

    auto* compute = app.add_subcommand("compute", "generators, relations and abelianization for one d");
    add_run_opts(compute);
    compute->add_flag("--auto-height", o.auto_height, "descend from 1/2 until the cover certifies");
    compute->add_option("--out", o.out, "output directory");
    compute->add_flag("--cleanup", o.cleanup, "apply Tietze cleanup");
    compute->add_flag("--export-cas", o.export_cas, "also write a Magma-style file");
    compute->add_flag("--json", o.json, "print the report as JSON");

    auto* cover = app.add_subcommand("check-cover", "certify the horoball cover only");
    add_run_opts(cover);

    auto* verify = app.add_subcommand("verify", "evaluate every relator of presentation files");
    verify->add_option("files", o.files, "native presentation files")->required()->check(CLI::ExistingFile);

    auto* abel = app.add_subcommand("abelianize", "abelian invariants of presentation files");
    abel->add_option("files", o.files, "native presentation files")->required()->check(CLI::ExistingFile);
    abel->add_flag("--cleanup", o.cleanup, "apply Tietze cleanup first");

    auto* exp = app.add_subcommand("export", "convert a presentation file");
    exp->add_option("file", o.files, "native presentation file")->required()->expected(1)->check(CLI::ExistingFile);
    exp->add_option("--export-cas", o.cas_path, "Magma-style output path (stdout if neither output given)");
    exp->add_option("--native", o.native_path, "native output path");
    exp->add_flag("--cleanup", o.cleanup, "apply Tietze cleanup first");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kInvalidInput;
    }

    try {
        if (*compute) return cmd_compute(o);
        if (*cover) return cmd_check_cover(o);
        if (*verify) return cmd_verify(o);
        if (*abel) return cmd_abelianize(o);
        return cmd_export(o);
    } catch (const UnsupportedRing& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInvalidInput;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInvalidInput;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInvalidInput;
    } catch (const InternalError& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kInternalError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInternalError;
    }
}
