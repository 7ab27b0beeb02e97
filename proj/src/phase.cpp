#include "kgl/phase.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include "kgl/errors.hpp"

namespace kgl {

Rat rat_mod1(const Rat& r) {
    Int num = r.numerator(), den = r.denominator();  // den > 0 by boost invariant
    Int q = num / den;
    if (num % den != 0 && num < 0) --q;  // floor division
    return r - Rat(q);
}

Phase Phase::from_turn(Rat t, std::size_t g) {
    Phase p(g);
    p.turn = rat_mod1(t);
    return p;
}

Phase Phase::free_generator(std::size_t index, std::size_t g) {
    if (index >= g) throw Error("IndexOutOfRange", "free generator index exceeds workspace");
    Phase p(g);
    p.free_part[index] = Rat(1);
    return p;
}

Phase Phase::operator+(const Phase& rhs) const {
    if (generators() != rhs.generators())
        throw Error("DimensionMismatch", "phases from different workspaces");
    Phase p(generators());
    p.turn = rat_mod1(turn + rhs.turn);
    for (std::size_t i = 0; i < free_part.size(); ++i)
        p.free_part[i] = free_part[i] + rhs.free_part[i];
    return p;
}

Phase Phase::operator-(const Phase& rhs) const { return *this + (-rhs); }

Phase Phase::operator-() const {
    Phase p(generators());
    p.turn = rat_mod1(-turn);
    for (std::size_t i = 0; i < free_part.size(); ++i) p.free_part[i] = -free_part[i];
    return p;
}

Phase Phase::scaled(const Rat& c) const {
    Phase p(generators());
    p.turn = rat_mod1(turn * c);
    for (std::size_t i = 0; i < free_part.size(); ++i) p.free_part[i] = free_part[i] * c;
    return p;
}

bool Phase::is_zero() const {
    if (turn != Rat(0)) return false;
    for (const auto& c : free_part)
        if (c != Rat(0)) return false;
    return true;
}

bool Phase::operator==(const Phase& rhs) const {
    return turn == rhs.turn && free_part == rhs.free_part;
}

std::string format_rat(const Rat& r) {
    if (r.denominator() == 1) return r.numerator().str();
    return r.numerator().str() + "/" + r.denominator().str();
}

Rat parse_rat(const std::string& text) {
    auto slash = text.find('/');
    try {
        if (slash == std::string::npos) return Rat(Int(text));
        Int num(text.substr(0, slash));
        Int den(text.substr(slash + 1));
        if (den == 0) throw Error("ParseError", "zero denominator in '" + text + "'");
        return Rat(num, den);
    } catch (const std::runtime_error&) {
        throw Error("ParseError", "cannot parse rational '" + text + "'");
    }
}

std::string Phase::format() const {
    std::string out;
    auto append = [&](const std::string& term) {
        if (!out.empty()) out += " + ";
        out += term;
    };
    if (turn != Rat(0)) append(format_rat(turn));
    for (std::size_t i = 0; i < free_part.size(); ++i) {
        const Rat& c = free_part[i];
        if (c == Rat(0)) continue;
        std::string t = "t" + std::to_string(i + 1);
        if (c == Rat(1))
            append(t);
        else if (c == Rat(-1))
            append("-" + t);
        else
            append(format_rat(c) + "*" + t);
    }
    return out.empty() ? "0" : out;
}

Phase Phase::parse(const std::string& text, std::size_t g) {
    Phase p(g);
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t next = text.find('+', pos);
        std::string term =
            text.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
        pos = next == std::string::npos ? text.size() : next + 1;
        // trim
        while (!term.empty() && std::isspace(static_cast<unsigned char>(term.front())))
            term.erase(term.begin());
        while (!term.empty() && std::isspace(static_cast<unsigned char>(term.back())))
            term.pop_back();
        if (term.empty()) throw Error("ParseError", "empty term in phase literal");
        auto tpos = term.find('t');
        if (tpos == std::string::npos) {
            p.turn = rat_mod1(p.turn + parse_rat(term));
            continue;
        }
        Rat coeff(1);
        std::string head = term.substr(0, tpos);
        if (!head.empty()) {
            if (head == "-") {
                coeff = Rat(-1);
            } else {
                if (head.back() != '*')
                    throw Error("ParseError", "expected '*' before generator in '" + term + "'");
                head.pop_back();
                while (!head.empty() && std::isspace(static_cast<unsigned char>(head.back())))
                    head.pop_back();
                coeff = parse_rat(head);
            }
        }
        std::size_t index;
        try {
            index = std::stoul(term.substr(tpos + 1));
        } catch (const std::exception&) {
            throw Error("ParseError", "bad generator name in '" + term + "'");
        }
        if (index < 1 || index > g)
            throw Error("ParseError", "generator t" + std::to_string(index) +
                                          " outside workspace of size " + std::to_string(g));
        p.free_part[index - 1] = p.free_part[index - 1] + coeff;
    }
    return p;
}

bool has_infinite_order(const Phase& p) {
    for (const auto& c : p.free_part)
        if (c != Rat(0)) return true;
    return false;  // a rational turn alone has finite order
}

}  // namespace kgl
