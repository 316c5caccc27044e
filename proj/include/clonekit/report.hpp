#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace clonekit {

struct CheckLine {
  std::string identity;
  bool pass = true;
  std::string instance;  // counterexample, empty on PASS
};

// Line-oriented verdict list. Rendering is stable:
//   PASS <identity>
//   FAIL <identity> at <instance>
class Report {
 public:
  void pass(std::string identity);
  void fail(std::string identity, std::string instance);
  void record(std::string identity, bool ok, std::string instance);
  void append(const Report& other);
  void append(const Report& other, const std::string& prefix);

  const std::vector<CheckLine>& lines() const noexcept { return lines_; }
  std::size_t passed() const noexcept;
  std::size_t failed() const noexcept;
  bool ok() const noexcept { return failed() == 0; }

  // True if a line with this identity exists and passed.
  bool passed(const std::string& identity) const;
  const CheckLine* find(const std::string& identity) const;

  std::string render() const;
  std::string summary() const;

 private:
  std::vector<CheckLine> lines_;
};

}  // namespace clonekit
