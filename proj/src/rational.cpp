#include "nucleo/rational.hpp"

#include <cctype>

#include "nucleo/errors.hpp"

namespace nucleo {

std::string rat_str(const Rat& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string count_str(const Count& c) { return c.get_str(); }

Rat parse_rat(const std::string& s) {
  if (s.empty()) throw validation_error("empty rational literal");
  std::string num = s, den = "1";
  if (auto pos = s.find('/'); pos != std::string::npos) {
    num = s.substr(0, pos);
    den = s.substr(pos + 1);
  }
  auto is_int = [](const std::string& t) {
    if (t.empty()) return false;
    std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
    return true;
  };
  if (!is_int(num) || !is_int(den))
    throw validation_error("malformed rational literal: " + s);
  mpz_class n(num), d(den);
  if (d == 0) throw validation_error("zero denominator in rational: " + s);
  Rat q(n, d);
  q.canonicalize();
  return q;
}

std::vector<Rat> parse_rat_list(const std::string& s) {
  std::vector<Rat> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    auto pos = s.find(',', start);
    if (pos == std::string::npos) pos = s.size();
    out.push_back(parse_rat(s.substr(start, pos - start)));
    start = pos + 1;
    if (pos == s.size()) break;
  }
  return out;
}

}  // namespace nucleo
