#ifndef MCMW_DATASET_HPP
#define MCMW_DATASET_HPP

#include <cstddef>
#include <string>
#include <vector>

namespace mcmw {

// Ordered collection of positive failure times. Values are kept both in
// input order and sorted ascending.
class Dataset {
 public:
  /// Throws std::invalid_argument on an empty input or any value <= 0
  /// (the diagnostic names the offending value).
  explicit Dataset(std::vector<double> values);

  std::size_t size() const { return original_.size(); }
  const std::vector<double>& values() const { return original_; }
  const std::vector<double>& sorted() const { return sorted_; }

  double min() const { return sorted_.front(); }
  double max() const { return sorted_.back(); }
  double mean() const { return mean_; }
  double sum() const { return sum_; }

 private:
  std::vector<double> original_;
  std::vector<double> sorted_;
  double sum_ = 0.0;
  double mean_ = 0.0;
};

/// Parses one numeric value per line or comma-separated values; '#' starts a
/// comment. Throws std::runtime_error with the line number on parse errors.
Dataset parse_dataset(const std::string& text);

/// Reads and parses a dataset file. Throws std::runtime_error on I/O errors.
Dataset load_dataset(const std::string& path);

}  // namespace mcmw

#endif
