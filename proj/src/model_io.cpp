#include "clonekit/model_io.hpp"

#include <cctype>
#include <charconv>
#include <sstream>

#include "clonekit/error.hpp"

namespace clonekit {

namespace {

struct Token {
  std::string text;
  std::size_t column;  // 1-based
};

std::vector<Token> split(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    if (std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
      continue;
    }
    if (line[i] == ':') {
      out.push_back({":", i + 1});
      ++i;
      continue;
    }
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])) && line[i] != ':') ++i;
    out.push_back({std::string(line.substr(start, i - start)), start + 1});
  }
  return out;
}

[[noreturn]] void fail(std::size_t line, std::size_t column, const std::string& what) {
  throw Error(ErrorCode::ParseError,
              "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what);
}

std::size_t number(const Token& t, std::size_t line) {
  std::size_t v = 0;
  const char* end = t.text.data() + t.text.size();
  auto [ptr, ec] = std::from_chars(t.text.data(), end, v);
  if (ec != std::errc() || ptr != end) fail(line, t.column, "expected a number, got '" + t.text + "'");
  return v;
}

}  // namespace

FiniteModel parse_model(std::string_view text) {
  std::optional<FiniteModel> m;
  std::vector<bool> seen;
  std::size_t line_no = 0;
  std::size_t last_column = 1;
  std::istringstream in{std::string(text)};
  std::string raw;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    std::vector<Token> tok = split(line);
    last_column = line.size() + 1;
    if (tok.empty()) continue;

    if (!m) {
      // the ring spec may itself contain ':'
      if (tok.size() > 3 && tok[2].text == "over") {
        std::string_view rest = line.substr(tok[3].column - 1);
        while (!rest.empty() && std::isspace(static_cast<unsigned char>(rest.back()))) rest.remove_suffix(1);
        if (rest.find_first_of(" \t") == std::string_view::npos) tok = {tok[0], tok[1], tok[2], {std::string(rest), tok[3].column}};
      }
      if (tok[0].text != "model") fail(line_no, tok[0].column, "expected 'model <N> over <ring-spec>'");
      if (tok.size() != 4 || tok[2].text != "over") {
        fail(line_no, tok.size() > 2 ? tok[2].column : last_column, "expected 'model <N> over <ring-spec>'");
      }
      const std::size_t n = number(tok[1], line_no);
      if (n == 0) fail(line_no, tok[1].column, "carrier must be nonempty");
      FiniteRing ring = [&] {
        try {
          return parse_ring_spec(tok[3].text);
        } catch (const Error& e) {
          fail(line_no, tok[3].column, e.what());
        }
      }();
      m = FiniteModel{ring, n, std::vector<std::vector<Elem>>(ring.size()), {}, {}, {}};
      seen.assign(ring.size(), false);
      continue;
    }

    const std::size_t N = m->size;
    // entries after the ':' token, with a ragged-row diagnostic
    auto entries = [&](std::size_t colon, std::size_t want) {
      if (colon >= tok.size() || tok[colon].text != ":") {
        fail(line_no, colon < tok.size() ? tok[colon].column : last_column, "expected ':'");
      }
      const std::size_t have = tok.size() - colon - 1;
      if (have != want) {
        const std::size_t col = have > want ? tok[colon + 1 + want].column : last_column;
        fail(line_no, col, "expected " + std::to_string(want) + " entries, got " + std::to_string(have));
      }
      std::vector<Elem> out;
      for (std::size_t i = colon + 1; i < tok.size(); ++i) {
        const std::size_t v = number(tok[i], line_no);
        if (v >= N) fail(line_no, tok[i].column, "entry " + std::to_string(v) + " outside carrier");
        out.push_back(static_cast<Elem>(v));
      }
      return out;
    };

    const std::string& key = tok[0].text;
    if (key == "action") {
      if (tok.size() < 2) fail(line_no, last_column, "expected a ring element");
      const std::size_t b = number(tok[1], line_no);
      if (b >= m->ring.size()) fail(line_no, tok[1].column, "ring element " + std::to_string(b) + " out of range");
      if (seen[b]) fail(line_no, tok[1].column, "duplicate action for element " + std::to_string(b));
      seen[b] = true;
      m->action[b] = entries(2, N * N);
    } else if (key == "p") {
      if (m->p) fail(line_no, tok[0].column, "duplicate p table");
      m->p = entries(1, N * N * N);
    } else if (key == "add") {
      if (m->add) fail(line_no, tok[0].column, "duplicate add table");
      m->add = entries(1, N * N);
    } else if (key == "o") {
      if (m->o) fail(line_no, tok[0].column, "duplicate base point");
      const auto v = entries(1, 1);
      m->o = v[0];
    } else {
      fail(line_no, tok[0].column, "unknown directive '" + key + "'");
    }
  }
  if (!m) fail(line_no + 1, 1, "missing 'model' header");
  for (std::size_t b = 0; b < seen.size(); ++b) {
    if (!seen[b]) fail(line_no + 1, 1, "missing action for ring element " + std::to_string(b));
  }
  m->validate();
  return *m;
}

std::string format_model(const FiniteModel& m) {
  std::ostringstream out;
  out << "model " << m.size << " over " << m.ring.spec() << "\n";
  auto row = [&](const std::vector<Elem>& t) {
    for (Elem v : t) out << ' ' << v;
    out << "\n";
  };
  for (std::size_t b = 0; b < m.action.size(); ++b) {
    out << "action " << b << " :";
    row(m.action[b]);
  }
  if (m.p) {
    out << "p :";
    row(*m.p);
  }
  if (m.add) {
    out << "add :";
    row(*m.add);
  }
  if (m.o) out << "o : " << *m.o << "\n";
  return out.str();
}

}  // namespace clonekit
