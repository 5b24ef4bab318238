// Tables shared between the reduction compiler and the witness builder.

#pragma once

#include <array>

namespace dlfd {

/// `lhs <= fd(over : from -> to)`.
struct SquarePfd {
  const char* lhs;
  const char* over;
  const char* from;
  const char* to;
};

const std::array<SquarePfd, 16>& square_pfds();

}  // namespace dlfd
