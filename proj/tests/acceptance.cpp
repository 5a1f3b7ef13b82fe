// Acceptance suite: one pass/fail line per criterion.
#include <cstdio>

int main(int, char**) {
  std::printf("acceptance: placeholder\n");
  return 1;
}
