#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "altcantor/basis.hpp"
#include "altcantor/digits.hpp"

namespace altcantor::cli {

// const:<d> | periodic:<d1,...> | prefix:<a,...>;periodic:<...> | factorial | primes | even
BasisSequence parse_basis(std::string_view text);

// <c1,c2,...>[;tail=zeros|periodic:<...>|trunc][;kind=negad|negadn|posd]
DigitPattern parse_digits(std::string_view text);

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kDomainError = 1;
inline constexpr int kParseError = 2;

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace altcantor::cli
