#include "tactnet/samples.hpp"

namespace tactnet::samples {

std::string_view apsum_source() {
  // r1 = sum, r2 = n, r3 = scratch counter, r4 = constant zero.
  return R"(# apsum: r1 := 0 + 1 + ... + r2
registers 4
init r2 = 4

1:  J 2 13      # while r2 > 0
2:  J 2 7       #   while r2 > 0
3:  P 1         #     r1++
4:  Q 2         #     r2--
5:  P 3         #     r3++
6:  J 4 2       #   end inner while
7:  Q 3         #   r3--
8:  J 3 12      #   while r3 > 0
9:  Q 3         #     r3--
10: P 2         #     r2++
11: J 4 8       #   end restore while
12: J 4 1       # end outer while
)";
}

RmProgram apsum_program() { return parse_rm(apsum_source()); }

}  // namespace tactnet::samples
