#include <mqap/evaluation.hpp>
#include <mqap/instance.hpp>

int main() {
  const auto inst = mqap::parse_instance("2\n0 1\n1 0\n0 3\n2 0\n");
  return mqap::evaluate_full(inst, mqap::identity_permutation(2)) == mqap::ObjectiveVector{5} ? 0 : 1;
}
