#pragma once

#include <deque>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace stw {

// Error kinds mirror the names used throughout the external interfaces.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& msg)
      : std::runtime_error(kind + ": " + msg), kind_(std::move(kind)) {}
  const std::string& kind() const { return kind_; }

 private:
  std::string kind_;
};

[[noreturn]] inline void fail(const std::string& kind, const std::string& msg) {
  throw Error(kind, msg);
}

enum class Status { Pass, Inconclusive, Fail };

inline const char* to_string(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Inconclusive: return "inconclusive";
    case Status::Fail: return "fail";
  }
  return "?";
}

inline Status worse(Status a, Status b) {
  auto sev = [](Status s) { return s == Status::Fail ? 2 : (s == Status::Inconclusive ? 1 : 0); };
  return sev(a) >= sev(b) ? a : b;
}

// One verified identity (or identity family) inside a check.
struct Item {
  std::string id;        // stable identifier, e.g. "additivity/e1-e2"
  Status status = Status::Pass;
  long long count = 0;   // instances evaluated
  std::string witness;   // failure data, empty on pass
};

// Result of one verifier run. Checks never throw on a falsified identity;
// failures are data carried in the items. A deque keeps references from
// add() stable while later items are appended.
struct CheckReport {
  std::string name;
  std::deque<Item> items;
  std::vector<std::string> notes;

  Status status() const {
    Status s = Status::Pass;
    for (const auto& it : items) s = worse(s, it.status);
    return s;
  }

  long long total_count() const {
    long long n = 0;
    for (const auto& it : items) n += it.count;
    return n;
  }

  bool passed() const { return status() == Status::Pass; }

  Item& add(const std::string& id) {
    items.push_back(Item{id, Status::Pass, 0, {}});
    return items.back();
  }

  void record(Item& it, bool ok, const std::string& witness_if_bad) {
    ++it.count;
    if (!ok && it.status != Status::Fail) {
      it.status = Status::Fail;
      it.witness = witness_if_bad;
    }
  }

  const Item* first_failure() const {
    for (const auto& it : items)
      if (it.status == Status::Fail) return &it;
    return nullptr;
  }
};

}  // namespace stw
