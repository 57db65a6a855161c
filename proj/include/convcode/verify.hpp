#pragma once

#include <string>
#include <vector>

namespace convcode {

/// Outcome of one named verification check.
struct VerifyItem {
  std::string name;
  bool ok = false;
  std::string detail;  ///< witness or explanation when the check fails
};

/// Collected results of a verification run.
struct VerifyReport {
  std::vector<VerifyItem> items;

  bool all_ok() const {
    for (const VerifyItem& it : items) {
      if (!it.ok) return false;
    }
    return true;
  }

  void add(std::string name, bool ok, std::string detail = "") {
    items.push_back({std::move(name), ok, std::move(detail)});
  }
};

}  // namespace convcode
