#pragma once

#include <string>
#include <vector>

namespace qfract::verify {

struct CheckResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;  // worst error / measured value summary
  double seconds = 0.0;
};

// The twelve acceptance criteria, in order. `threads` bounds worker counts
// inside the heavy checks; results do not depend on it.
std::vector<CheckResult> run_acceptance(unsigned threads,
                                        const std::vector<int>& only = {});

// Module suite -> criteria subset (clifford -> {1,2}, conformal -> {3,4,5},
// polytopes -> {6}, markov -> {7,8,9}, fracdim -> {10}, ifs -> {11},
// cli -> {12}, all/acceptance -> everything).
std::vector<int> suite_criteria(const std::string& suite);

}  // namespace qfract::verify
