// placeholder until the acceptance suite lands
#include <iostream>
int main() {
  std::cout << "acceptance suite not yet wired\n";
  return 1;
}
