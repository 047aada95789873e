#include "mcmw/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace mcmw {

Dataset::Dataset(std::vector<double> values) : original_(std::move(values)) {
  if (original_.empty())
    throw std::invalid_argument("dataset: needs at least one observation");
  for (double v : original_) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      std::ostringstream os;
      os << "dataset: nonpositive value " << v << " rejected";
      throw std::invalid_argument(os.str());
    }
  }
  sorted_ = original_;
  std::sort(sorted_.begin(), sorted_.end());
  sum_ = std::accumulate(original_.begin(), original_.end(), 0.0);
  mean_ = sum_ / static_cast<double>(original_.size());
}

Dataset parse_dataset(const std::string& text) {
  std::vector<double> vals;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    for (char& ch : line)
      if (ch == ',') ch = ' ';
    std::istringstream ls(line);
    std::string tok;
    while (ls >> tok) {
      try {
        std::size_t used = 0;
        const double v = std::stod(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        vals.push_back(v);
      } catch (const std::logic_error&) {
        std::ostringstream os;
        os << "parse error at line " << lineno << ": '" << tok << "'";
        throw std::invalid_argument(os.str());
      }
    }
  }
  if (vals.empty()) throw std::invalid_argument("no data values found");
  return Dataset(std::move(vals));
}

Dataset load_dataset(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot open data file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_dataset(ss.str());
}

}  // namespace mcmw
