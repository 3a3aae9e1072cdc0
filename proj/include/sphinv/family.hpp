#pragma once

#include <string>

#include "sphinv/errors.hpp"

namespace sphinv {

// The four spherical Bessel families.  Y and J oscillate (cos- and
// sin-dominant Laurent rows), I is sinh-dominant, K is a pure e^{-x} row.
// Note: this table's k_n differs from the DLMF normalization by a factor of
// pi/2 (DLMF k_n = (pi/2) * ours); see kDlmfKFactor in laurent.hpp.
enum class Family : char { Y = 'Y', J = 'J', I = 'I', K = 'K' };

inline const char* family_name(Family f) {
  switch (f) {
    case Family::Y: return "y";
    case Family::J: return "j";
    case Family::I: return "i";
    case Family::K: return "k";
  }
  return "?";
}

inline Family family_from_char(char c) {
  switch (c) {
    case 'Y': case 'y': return Family::Y;
    case 'J': case 'j': return Family::J;
    case 'I': case 'i': return Family::I;
    case 'K': case 'k': return Family::K;
  }
  throw DomainError(std::string("unknown family '") + c + "' (expected one of Y, J, I, K)");
}

// Y and K have a pole at x = 0; J and I are entire.
inline bool family_has_pole(Family f) { return f == Family::Y || f == Family::K; }

// Families whose dominant/cofactor pair oscillates (infinitely many branches).
inline bool family_oscillates(Family f) { return f == Family::Y || f == Family::J; }

}  // namespace sphinv
