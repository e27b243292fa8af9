#include "bianchi/word.hpp"

#include <cctype>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

namespace bianchi {

void append(Word& w, std::size_t gen, long exp) {
    if (exp == 0) return;
    if (!w.empty() && w.back().gen == gen) {
        w.back().exp += exp;
        if (w.back().exp == 0) w.pop_back();
        return;
    }
    w.push_back({gen, exp});
}

void append(Word& w, const Word& tail) {
    for (const auto& l : tail) append(w, l.gen, l.exp);
}

Word free_reduce(const Word& w) {
    Word out;
    out.reserve(w.size());
    for (const auto& l : w) append(out, l.gen, l.exp);
    return out;
}

Word inverse(const Word& w) {
    Word out;
    out.reserve(w.size());
    for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back({it->gen, -it->exp});
    return out;
}

Word cyclic_reduce(const Word& w) {
    Word r = free_reduce(w);
    while (r.size() >= 2 && r.front().gen == r.back().gen) {
        long e = r.front().exp + r.back().exp;
        r.pop_back();
        if (e == 0) {
            r.erase(r.begin());
        } else {
            r.front().exp = e;
        }
    }
    return r;
}

Word power(const Word& w, long k) {
    Word base = k < 0 ? inverse(w) : w;
    Word out;
    for (long i = 0; i < (k < 0 ? -k : k); ++i) append(out, base);
    return out;
}

long word_length(const Word& w) {
    long n = 0;
    for (const auto& l : w) n += l.exp < 0 ? -l.exp : l.exp;
    return n;
}

std::vector<long> exponent_sums(const Word& w, std::size_t ngens) {
    std::vector<long> out(ngens, 0);
    for (const auto& l : w) out.at(l.gen) += l.exp;
    return out;
}

Word word_from_shift(const QuadInt& s, std::size_t t1, std::size_t tw) {
    if (!s.x.fits_slong_p() || !s.y.fits_slong_p())
        throw std::overflow_error("shift exponent does not fit in a machine word");
    Word out;
    append(out, t1, s.x.get_si());
    append(out, tw, s.y.get_si());
    return out;
}

namespace {

class WordParser {
public:
    WordParser(const std::string& text, const std::map<std::string, std::size_t>& names)
        : text_(text), names_(names) {}

    Word parse() {
        Word w = sequence();
        skip();
        if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
        return w;
    }

private:
    const std::string& text_;
    const std::map<std::string, std::size_t>& names_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& why) const {
        throw std::invalid_argument("cannot parse word '" + text_ + "' at offset " +
                                    std::to_string(pos_) + ": " + why);
    }

    void skip() {
        while (pos_ < text_.size() && (std::isspace(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '*'))
            ++pos_;
    }

    Word sequence() {
        Word w;
        while (true) {
            skip();
            if (pos_ >= text_.size() || text_[pos_] == ')') return w;
            append(w, factor());
        }
    }

    Word factor() {
        Word base;
        char ch = text_[pos_];
        if (ch == '(') {
            ++pos_;
            base = sequence();
            if (pos_ >= text_.size() || text_[pos_] != ')') fail("missing ')'");
            ++pos_;
        } else if (ch == '1' && (pos_ + 1 == text_.size() || !std::isalnum(static_cast<unsigned char>(text_[pos_ + 1])))) {
            ++pos_;  // explicit identity
        } else if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
            std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                ++pos_;
            std::string name = text_.substr(start, pos_ - start);
            auto it = names_.find(name);
            if (it == names_.end()) fail("unknown generator '" + name + "'");
            base.push_back({it->second, 1});
        } else {
            fail("unexpected '" + std::string(1, ch) + "'");
        }
        if (pos_ < text_.size() && text_[pos_] == '^') {
            ++pos_;
            return power(base, exponent());
        }
        return base;
    }

    long exponent() {
        bool braced = pos_ < text_.size() && text_[pos_] == '{';
        if (braced) ++pos_;
        std::size_t start = pos_;
        if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) ++pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        std::string digits = text_.substr(start, pos_ - start);
        if (digits.empty() || digits == "-" || digits == "+") fail("missing exponent");
        if (braced) {
            if (pos_ >= text_.size() || text_[pos_] != '}') fail("missing '}'");
            ++pos_;
        }
        return std::strtol(digits.c_str(), nullptr, 10);
    }
};

std::string format_with(const Word& w, const std::vector<std::string>& names, const char* sep) {
    if (w.empty()) return "1";
    std::ostringstream os;
    bool first = true;
    for (const auto& l : w) {
        if (!first) os << sep;
        first = false;
        os << names.at(l.gen);
        if (l.exp != 1) os << '^' << l.exp;
    }
    return os.str();
}

}  // namespace

Word parse_word(const std::string& text, const std::map<std::string, std::size_t>& names) {
    return WordParser(text, names).parse();
}

std::string format_word(const Word& w, const std::vector<std::string>& names) {
    return format_with(w, names, " ");
}

std::string format_word_cas(const Word& w, const std::vector<std::string>& names) {
    return format_with(w, names, "*");
}

}  // namespace bianchi
