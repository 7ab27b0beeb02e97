#pragma once

#include <string>

#include "kgl/int_matrix.hpp"

namespace kgl {

Rat rat_mod1(const Rat& r);  // representative in [0, 1)

/// Element of Q/Z + Q^g: a rational turn plus a rational combination of g
/// formal generators t1..tg standing for rationally independent angles. All
/// arithmetic is exact, so "z^n != 1 for every n" is decidable: it holds
/// exactly when the free part is nonzero.
class Phase {
public:
    Rat turn;          // in [0, 1)
    RatVec free_part;  // length g

    Phase() = default;
    explicit Phase(std::size_t g) : turn(0), free_part(g, Rat(0)) {}

    static Phase from_turn(Rat t, std::size_t g);
    static Phase free_generator(std::size_t index, std::size_t g);  // t_{index+1}

    std::size_t generators() const { return free_part.size(); }

    Phase operator+(const Phase& rhs) const;
    Phase operator-(const Phase& rhs) const;
    Phase operator-() const;
    Phase scaled(const Rat& c) const;
    Phase scaled(const Int& c) const { return scaled(Rat(c)); }

    bool is_zero() const;
    bool operator==(const Phase& rhs) const;

    /// "p/q" turns, "tN" generators, '+'-separated with rational multipliers:
    /// "1/3 + 2*t1", "-1/2*t2", "0".
    std::string format() const;
    static Phase parse(const std::string& text, std::size_t g);
};

bool has_infinite_order(const Phase& p);

std::string format_rat(const Rat& r);
Rat parse_rat(const std::string& text);

}  // namespace kgl
