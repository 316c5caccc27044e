#include "clonekit/report.hpp"

#include <algorithm>

namespace clonekit {

void Report::pass(std::string identity) { lines_.push_back({std::move(identity), true, {}}); }

void Report::fail(std::string identity, std::string instance) {
  lines_.push_back({std::move(identity), false, std::move(instance)});
}

void Report::record(std::string identity, bool ok, std::string instance) {
  if (ok) {
    pass(std::move(identity));
  } else {
    fail(std::move(identity), std::move(instance));
  }
}

void Report::append(const Report& other) {
  lines_.insert(lines_.end(), other.lines_.begin(), other.lines_.end());
}

void Report::append(const Report& other, const std::string& prefix) {
  for (CheckLine line : other.lines_) {
    line.identity = prefix + line.identity;
    lines_.push_back(std::move(line));
  }
}

std::size_t Report::passed() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(lines_.begin(), lines_.end(), [](const CheckLine& l) { return l.pass; }));
}

std::size_t Report::failed() const noexcept { return lines_.size() - passed(); }

const CheckLine* Report::find(const std::string& identity) const {
  auto it = std::find_if(lines_.begin(), lines_.end(),
                         [&](const CheckLine& l) { return l.identity == identity; });
  return it == lines_.end() ? nullptr : &*it;
}

bool Report::passed(const std::string& identity) const {
  const CheckLine* line = find(identity);
  return line != nullptr && line->pass;
}

std::string Report::render() const {
  std::string out;
  for (const CheckLine& l : lines_) {
    if (l.pass) {
      out += "PASS " + l.identity + "\n";
    } else {
      out += "FAIL " + l.identity + " at " + l.instance + "\n";
    }
  }
  return out;
}

std::string Report::summary() const {
  return "summary: " + std::to_string(passed()) + " passed, " + std::to_string(failed()) +
         " failed";
}

}  // namespace clonekit
