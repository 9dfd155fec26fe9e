#pragma once

#include "zen/classifier.hpp"

#include <vector>

namespace testing_support {

// Split from explicit node lists; every other node is test.
inline zen::Split make_split(std::int64_t n, const std::vector<std::int64_t>& train,
                             const std::vector<std::int64_t>& val, int shots, std::int32_t classes) {
  zen::Split s;
  s.train_mask.assign(static_cast<std::size_t>(n), 0);
  s.val_mask.assign(static_cast<std::size_t>(n), 0);
  s.test_mask.assign(static_cast<std::size_t>(n), 1);
  for (auto v : train) {
    s.train_mask[static_cast<std::size_t>(v)] = 1;
    s.test_mask[static_cast<std::size_t>(v)] = 0;
  }
  for (auto v : val) {
    s.val_mask[static_cast<std::size_t>(v)] = 1;
    s.test_mask[static_cast<std::size_t>(v)] = 0;
  }
  s.shots = shots;
  s.num_classes = classes;
  return s;
}

}  // namespace testing_support
