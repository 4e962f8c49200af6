#pragma once

#include <utility>

#include "altcantor/basis.hpp"
#include "altcantor/digits.hpp"

namespace altcantor {

// Same digits read under the offset convention. The values satisfy
// value(NegaDn) + value(NegaD) + value(NegaD of all ones) = 0.
DigitString negadn_of_negad(const DigitString& digits, const BasisSequence& basis);
DigitString negad_of_negadn(const DigitString& digits, const BasisSequence& basis);

enum class Parity { Even, Odd };

// Replaces e_n by d_n - 1 - e_n at even (or odd) positions and swaps
// PositiveD <-> NegaDn. The even map preserves the value.
DigitString parity_complement(const DigitString& digits, const BasisSequence& basis, Parity which);

// p_n = d_{2n-1} d_{2n}.
struct CompressedBasis {
  BasisSequence source;
  BasisSequence compressed;

  explicit CompressedBasis(const BasisSequence& basis) : source(basis), compressed(basis.pair_compressed()) {}
};

struct CompressedDigits {
  DigitString digits;  // PositiveD over `basis.compressed`
  CompressedBasis basis;
  SeriesKind source_kind;
  bool padded;  // the source prefix had odd length and was padded with a 0
};

// PositiveD input: beta_n = a_{2n-1} d_{2n} + a_{2n}.
// NegaDn input:    gamma_n = (e_{2n-1} + 1) d_{2n} - e_{2n} - 1.
// The value is preserved.
CompressedDigits pair_compress(const DigitString& digits, const BasisSequence& basis);
DigitString pair_decompress(const CompressedDigits& compressed);

// (e_1, 0, e_3, 0, ...) and (0, e_2, 0, e_4, ...).
std::pair<DigitString, DigitString> parity_split(const DigitString& digits, const BasisSequence& basis);

}  // namespace altcantor
