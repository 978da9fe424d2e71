#include <iostream>

#include "relalg/commands.hpp"
#include "relalg/structure_file.hpp"

int main() {
  const relalg::AtomStructure A = relalg::parse_structure(R"(
[atoms]
e d
[identity]
e
[facts]
e <= e ; e
d <= d ; d
e <= d ; d
[options]
autoclose = true
)");
  relalg::RepresentOptions opt;
  opt.passes = 2;
  opt.depth = 3;
  const relalg::Report rep = relalg::cmd_represent(A, opt);
  rep.write(std::cout, false);
  return rep.all_pass() ? 0 : 1;
}
