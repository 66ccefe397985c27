#include <cstdio>

int main() {
  std::fprintf(stderr, "exclab: no subcommands wired up yet\n");
  return 2;
}
