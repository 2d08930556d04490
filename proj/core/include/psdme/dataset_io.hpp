#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "psdme/dataset.hpp"

namespace psdme {

enum class DatasetFormat { Csv, Json };

/// CSV schema: UTF-8, header exactly `config_id,value`, decimal point `.`,
/// one sample per row, rows grouped by first appearance of each id.
/// JSON schema: {"configs":[{"id":string,"samples":[number,...]},...]}.
///
/// File-level failures (missing file, unreadable) throw psdme::IoError;
/// malformed content throws psdme::ParseError.
KpiDataset load_dataset(const std::filesystem::path& path, DatasetFormat format);
void save_dataset(const KpiDataset& data, const std::filesystem::path& path,
                  DatasetFormat format);

// String-level variants; the file functions are thin wrappers over these.
KpiDataset parse_dataset_csv(std::string_view text);
std::string dataset_to_csv(const KpiDataset& data);
KpiDataset parse_dataset_json(std::string_view text);
std::string dataset_to_json(const KpiDataset& data);

/// Filesystem-level failure (open, read, write).
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input content.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace psdme
