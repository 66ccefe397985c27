#include <cstdio>
#include <cstdlib>
#include <cstring>

int main(int argc, char** argv) {
  int criterion = 0;
  for (int i = 1; i + 1 < argc; ++i)
    if (std::strcmp(argv[i], "--criterion") == 0) criterion = std::atoi(argv[i + 1]);
  std::printf("criterion %d: fail (not implemented)\n", criterion);
  return 1;
}
