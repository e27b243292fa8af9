#include "bianchi/presentation.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

namespace bianchi {

std::vector<std::string> Presentation::names() const {
    std::vector<std::string> out;
    out.reserve(generators.size());
    for (const auto& g : generators) out.push_back(g.name);
    return out;
}

std::map<std::string, std::size_t> Presentation::name_index() const {
    std::map<std::string, std::size_t> out;
    for (std::size_t k = 0; k < generators.size(); ++k) out.emplace(generators[k].name, k);
    return out;
}

long Presentation::total_length() const {
    long n = 0;
    for (const auto& r : relators) n += word_length(r);
    return n;
}

GroupElement evaluate_word(const Word& w, const std::vector<Generator>& generators) {
    std::optional<GroupElement> acc;
    for (const auto& l : w) {
        if (l.gen >= generators.size() || !generators[l.gen].matrix)
            throw UnassignedGenerator("generator " +
                                      (l.gen < generators.size() ? generators[l.gen].name
                                                                 : std::to_string(l.gen)) +
                                      " has no matrix");
        GroupElement m = power(*generators[l.gen].matrix, l.exp);
        acc = acc ? *acc * m : m;
    }
    if (acc) return *acc;
    for (const auto& g : generators)
        if (g.matrix) return GroupElement::identity(g.matrix->params());
    throw UnassignedGenerator("cannot evaluate the empty word without a ring");
}

Presentation relator_words(const std::vector<RawRelation>& raw, const GenSet& gens) {
    Presentation p;
    p.params = gens.params();
    p.height = gens.height();
    p.generators.push_back({"T1", gens.t1()});
    p.generators.push_back({"Tw", gens.tw()});
    for (std::size_t k = 0; k < gens.size(); ++k)
        p.generators.push_back({"g" + std::to_string(k + 1), gens[k]});

    auto gid = [](std::size_t k) { return k + 2; };
    std::set<Word> seen;
    auto add = [&](Word w) {
        w = free_reduce(w);
        if (w.empty() || !seen.insert(w).second) return;
        p.relators.push_back(std::move(w));
    };
    add({{kT1, 1}, {kTw, 1}, {kT1, -1}, {kTw, -1}});
    for (const auto& rel : raw) {
        Word w;
        if (rel.kind == RelationKind::Triple) {
            append(w, gid(rel.B), -1);
            append(w, word_from_shift(-rel.s, kT1, kTw));
        }
        append(w, gid(rel.A), 1);
        append(w, word_from_shift(rel.r, kT1, kTw));
        append(w, gid(rel.C), 1);
        append(w, word_from_shift(rel.t, kT1, kTw));
        add(std::move(w));
    }
    return p;
}

void write_native(std::ostream& os, const Presentation& p) {
    auto names = p.names();
    os << "bianchi-presentation 1\n";
    os << "d " << p.params.d << "\n";
    if (p.height) os << "height " << *p.height << "\n";
    os << "generators " << p.generators.size() << "\n";
    for (const auto& g : p.generators) {
        os << g.name;
        if (g.matrix) {
            for (const QuadInt* e : {&g.matrix->a, &g.matrix->b, &g.matrix->c, &g.matrix->d})
                os << " " << e->x << " " << e->y;
        } else {
            os << " -";
        }
        os << "\n";
    }
    os << "relators " << p.relators.size() << "\n";
    for (std::size_t k = 0; k < p.relators.size(); ++k) {
        os << format_word(p.relators[k], names);
        if (k < p.corrections.size() && p.corrections[k])
            os << " @typo " << format_word(*p.corrections[k], names);
        os << "\n";
    }
    os << "end\n";
}

namespace {

struct LineReader {
    std::istream& is;
    long lineno = 0;

    // Next non-empty line with comments stripped; false at EOF.
    bool next(std::string& out) {
        std::string line;
        while (std::getline(is, line)) {
            ++lineno;
            auto hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            auto b = line.find_first_not_of(" \t\r");
            if (b == std::string::npos) continue;
            auto e = line.find_last_not_of(" \t\r");
            out = line.substr(b, e - b + 1);
            return true;
        }
        return false;
    }

    [[noreturn]] void fail(const std::string& why) const {
        throw ParseError("line " + std::to_string(lineno) + ": " + why);
    }

    std::string expect(const std::string& keyword) {
        std::string line;
        if (!next(line)) fail("unexpected end of file, expected '" + keyword + "'");
        if (line.rfind(keyword, 0) != 0) fail("expected '" + keyword + "', got '" + line + "'");
        return line.substr(keyword.size());
    }
};

long parse_count(LineReader& r, const std::string& text) {
    std::istringstream ss(text);
    long v;
    if (!(ss >> v) || v < 0) r.fail("bad count '" + text + "'");
    return v;
}

}  // namespace

Presentation read_native(std::istream& is) {
    LineReader r{is};
    Presentation p;
    std::string version = r.expect("bianchi-presentation");
    if (parse_count(r, version) != 1) r.fail("unsupported format version");
    std::string dline = r.expect("d ");
    try {
        p.params = evaluation_ring_params(std::stol(dline));
    } catch (const std::invalid_argument& e) {
        r.fail(e.what());
    }

    std::string line;
    if (!r.next(line)) r.fail("unexpected end of file");
    if (line.rfind("height ", 0) == 0) {
        try {
            p.height = parse_rational(line.substr(7));
        } catch (const std::invalid_argument& e) {
            r.fail(e.what());
        }
        if (!r.next(line)) r.fail("unexpected end of file");
    }
    if (line.rfind("generators ", 0) != 0) r.fail("expected 'generators'");
    long ngen = parse_count(r, line.substr(11));
    for (long k = 0; k < ngen; ++k) {
        if (!r.next(line)) r.fail("unexpected end of file in generator list");
        std::istringstream ss(line);
        Generator g;
        ss >> g.name;
        std::vector<std::string> fields;
        for (std::string f; ss >> f;) fields.push_back(f);
        if (fields.size() == 1 && fields[0] == "-") {
            p.generators.push_back(std::move(g));
            continue;
        }
        if (fields.size() != 8) r.fail("generator '" + g.name + "' needs 8 integers or '-'");
        std::vector<QuadInt> e;
        try {
            for (int i = 0; i < 8; i += 2)
                e.push_back({Integer(fields[i], 10), Integer(fields[i + 1], 10), p.params});
        } catch (const std::invalid_argument&) {
            r.fail("generator '" + g.name + "' has a non-integer entry");
        }
        GroupElement m{e[0], e[1], e[2], e[3]};
        if (!(m.det() == QuadInt::one(p.params)))
            r.fail("generator '" + g.name + "' does not have determinant 1");
        g.matrix = m;
        p.generators.push_back(std::move(g));
    }
    auto names = p.name_index();
    if (names.size() != p.generators.size()) r.fail("duplicate generator names");

    long nrel = parse_count(r, r.expect("relators "));
    for (long k = 0; k < nrel; ++k) {
        if (!r.next(line)) r.fail("unexpected end of file in relator list");
        std::string main = line;
        std::optional<Word> fix;
        auto at = line.find("@typo");
        try {
            if (at != std::string::npos) {
                main = line.substr(0, at);
                fix = parse_word(line.substr(at + 5), names);
            }
            p.relators.push_back(parse_word(main, names));
        } catch (const std::invalid_argument& e) {
            r.fail(e.what());
        }
        p.corrections.push_back(std::move(fix));
    }
    bool any_fix = false;
    for (const auto& c : p.corrections) any_fix = any_fix || c.has_value();
    if (!any_fix) p.corrections.clear();
    r.expect("end");
    return p;
}

Presentation read_native_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path.string());
    try {
        return read_native(in);
    } catch (const ParseError& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

void write_native_file(const std::filesystem::path& path, const Presentation& p) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    write_native(out, p);
    if (!out) throw std::runtime_error("failed writing " + path.string());
}

void write_cas(std::ostream& os, const Presentation& p) {
    auto names = p.names();
    os << "// PSL2(O_d), d = " << p.params.d;
    if (p.height) os << ", height " << *p.height;
    os << "\n";
    for (const auto& g : p.generators) {
        if (!g.matrix) continue;
        os << "// " << g.name << " = " << *g.matrix << "\n";
    }
    std::string gens;
    for (std::size_t k = 0; k < names.size(); ++k) gens += (k ? "," : "") + names[k];
    os << "G<" << gens << "> := Group<" << gens << " |";
    bool first = true;
    for (const auto& rel : p.relators) {
        if (rel.empty()) continue;
        os << (first ? "\n    " : ",\n    ") << format_word_cas(rel, names);
        first = false;
    }
    os << "\n>;\n";
}

}  // namespace bianchi
