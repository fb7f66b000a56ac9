#pragma once

#include "padiq/oracle.hpp"
#include "padiq/syntax.hpp"

#include <ostream>

namespace padiq {

inline void PrintTo(const SatResult& r, std::ostream* os) {
    *os << (r.sat ? "Sat(" + r.witness.str() + ")" : std::string("Unsat"));
}

inline void PrintTo(const Formula& f, std::ostream* os) { *os << render(f); }

}  // namespace padiq
