#include "psdme/dataset_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>
#include <unordered_map>
#include <vector>

#include <nlohmann/json.hpp>

namespace psdme {

namespace {

constexpr std::string_view kCsvHeader = "config_id,value";

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string_view strip_cr(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  return line;
}

KpiDataset group_rows(std::vector<std::pair<std::string, double>> rows) {
  std::vector<ConfigSamples> entries;
  std::unordered_map<std::string, std::size_t> index;
  for (auto& [id, value] : rows) {
    auto [it, inserted] = index.emplace(id, entries.size());
    if (inserted) entries.push_back({std::move(id), {}});
    entries[it->second].samples.push_back(value);
  }
  try {
    return KpiDataset(std::move(entries));
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

}  // namespace

KpiDataset parse_dataset_csv(std::string_view text) {
  if (text.empty()) throw ParseError("empty file");

  std::size_t pos = 0;
  const auto next_line = [&]() -> std::string_view {
    const std::size_t end = text.find('\n', pos);
    std::string_view line = end == std::string_view::npos
                                ? text.substr(pos)
                                : text.substr(pos, end - pos);
    pos = end == std::string_view::npos ? text.size() : end + 1;
    return strip_cr(line);
  };

  const std::string_view header = next_line();
  if (header != kCsvHeader) {
    throw ParseError("expected header '" + std::string(kCsvHeader) + "', got '" +
                     std::string(header) + "'");
  }

  std::vector<std::pair<std::string, double>> rows;
  std::size_t line_no = 1;
  while (pos < text.size()) {
    ++line_no;
    const std::string_view line = next_line();
    if (line.empty()) continue;
    const std::size_t comma = line.find(',');
    if (comma == std::string_view::npos || comma == 0) {
      throw ParseError("line " + std::to_string(line_no) + ": expected 'config_id,value'");
    }
    const std::string_view id = line.substr(0, comma);
    const std::string_view num = line.substr(comma + 1);
    double value = 0.0;
    const auto res = std::from_chars(num.data(), num.data() + num.size(), value);
    if (res.ec != std::errc() || res.ptr != num.data() + num.size()) {
      throw ParseError("line " + std::to_string(line_no) + ": bad numeric value '" +
                       std::string(num) + "'");
    }
    if (!std::isfinite(value)) {
      throw ParseError("line " + std::to_string(line_no) + ": non-finite value");
    }
    rows.emplace_back(std::string(id), value);
  }
  if (rows.empty()) throw ParseError("no data rows");
  return group_rows(std::move(rows));
}

std::string dataset_to_csv(const KpiDataset& data) {
  std::string out(kCsvHeader);
  out.push_back('\n');
  for (const auto& entry : data.entries()) {
    if (entry.id.find_first_of(",\r\n") != std::string::npos) {
      throw std::invalid_argument("config id '" + entry.id +
                                  "' cannot be represented in CSV");
    }
    for (double v : entry.samples) {
      out += entry.id;
      out.push_back(',');
      out += format_double(v);
      out.push_back('\n');
    }
  }
  return out;
}

KpiDataset parse_dataset_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("bad JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("configs") || !doc["configs"].is_array()) {
    throw ParseError("expected an object with a 'configs' array");
  }
  std::vector<ConfigSamples> entries;
  for (const auto& item : doc["configs"]) {
    if (!item.is_object() || !item.contains("id") || !item["id"].is_string() ||
        !item.contains("samples") || !item["samples"].is_array()) {
      throw ParseError("each config needs a string 'id' and a 'samples' array");
    }
    ConfigSamples entry{item["id"].get<std::string>(), {}};
    for (const auto& v : item["samples"]) {
      if (!v.is_number()) throw ParseError("samples must be numbers");
      entry.samples.push_back(v.get<double>());
    }
    entries.push_back(std::move(entry));
  }
  if (entries.empty()) throw ParseError("no configs");
  try {
    return KpiDataset(std::move(entries));
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

std::string dataset_to_json(const KpiDataset& data) {
  nlohmann::ordered_json configs = nlohmann::ordered_json::array();
  for (const auto& entry : data.entries()) {
    configs.push_back({{"id", entry.id}, {"samples", entry.samples}});
  }
  nlohmann::ordered_json doc;
  doc["configs"] = std::move(configs);
  return doc.dump();
}

KpiDataset load_dataset(const std::filesystem::path& path, DatasetFormat format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("failed reading '" + path.string() + "'");
  const std::string text = buf.str();
  return format == DatasetFormat::Csv ? parse_dataset_csv(text)
                                      : parse_dataset_json(text);
}

void save_dataset(const KpiDataset& data, const std::filesystem::path& path,
                  DatasetFormat format) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << (format == DatasetFormat::Csv ? dataset_to_csv(data) : dataset_to_json(data));
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

}  // namespace psdme
