#include "deqt/io.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <charconv>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "deqt/error.hpp"

namespace deqt {

std::string format_double(double value) {
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  if (ec != std::errc()) throw IoError("cannot format floating-point value");
  return std::string(buf.data(), ptr);
}

double parse_double(const std::string& text) {
  double out = 0.0;
  const char* begin = text.data();
  const char* end = text.data() + text.size();
  if (begin != end && *begin == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, end, out);
  if (ec != std::errc() || ptr != end || begin == end) {
    throw UsageError("not a number: '" + text + "'");
  }
  return out;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

bool next_line(std::istream& in, std::string& line) {
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) return true;
  }
  return false;
}

template <typename Int>
Int parse_integer(const std::string& text) {
  Int out{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw UsageError("not an integer: '" + text + "'");
  }
  return out;
}

}  // namespace

void write_entropy_csv(std::ostream& out, const EntropySeries& series) {
  out << "episode";
  for (int k = 0; k < series.channel_count(); ++k) out << ",channel_" << k;
  out << ",sum\n";
  for (int t = 0; t < series.episodes(); ++t) {
    out << t;
    for (int k = 0; k < series.channel_count(); ++k) {
      out << ',' << format_double(series.channel(k)[static_cast<std::size_t>(t)]);
    }
    out << ',' << format_double(series.sum()[static_cast<std::size_t>(t)]) << '\n';
  }
}

EntropySeries read_entropy_csv(std::istream& in) {
  std::string line;
  if (!next_line(in, line)) throw UsageError("entropy CSV: missing header");
  const auto header = split_csv_line(line);
  if (header.size() < 3 || header.front() != "episode" || header.back() != "sum") {
    throw UsageError("entropy CSV: unexpected header '" + line + "'");
  }
  const int channels = static_cast<int>(header.size()) - 2;
  EntropySeries series(channels);
  std::vector<double> row(static_cast<std::size_t>(channels));
  while (next_line(in, line)) {
    const auto fields = split_csv_line(line);
    if (fields.size() != header.size()) throw UsageError("entropy CSV: ragged row");
    for (int k = 0; k < channels; ++k) row[static_cast<std::size_t>(k)] = parse_double(fields[static_cast<std::size_t>(k) + 1]);
    series.append(row);
  }
  return series;
}

void write_stopping_points_csv(std::ostream& out, const std::vector<StoppingPointsRow>& rows) {
  out << "run,seed,t_earliest,t_latest,t_max,t_final\n";
  for (const auto& r : rows) {
    out << r.run << ',' << r.seed << ',' << r.points.t_earliest << ',' << r.points.t_latest << ','
        << r.points.t_max << ',' << r.points.t_final << '\n';
  }
}

void write_stats_csv(std::ostream& out, const std::vector<StatsRow>& rows) {
  out << "setup,testing_time,metric,mean,std,n\n";
  for (const auto& r : rows) {
    out << r.setup << ',' << r.testing_time << ',' << r.metric << ',' << format_double(r.mean) << ','
        << format_double(r.std) << ',' << r.n << '\n';
  }
}

std::vector<StatsRow> read_stats_csv(std::istream& in) {
  std::string line;
  if (!next_line(in, line)) throw UsageError("stats CSV: missing header");
  if (line != "setup,testing_time,metric,mean,std,n") {
    throw UsageError("stats CSV: unexpected header '" + line + "'");
  }
  std::vector<StatsRow> rows;
  while (next_line(in, line)) {
    const auto f = split_csv_line(line);
    if (f.size() != 6) throw UsageError("stats CSV: expected 6 fields in '" + line + "'");
    for (std::size_t i = 0; i < f.size(); ++i) {
      if (f[i].empty()) throw UsageError("stats CSV: empty field in '" + line + "'");
    }
    StatsRow r;
    r.setup = f[0];
    r.testing_time = f[1];
    r.metric = f[2];
    r.mean = parse_double(f[3]);
    r.std = parse_double(f[4]);
    r.n = parse_integer<std::size_t>(f[5]);
    rows.push_back(std::move(r));
  }
  return rows;
}

std::vector<StatsRow> stats_rows(const std::string& setup, const WorkflowReport& report) {
  std::vector<StatsRow> rows;
  for (TestingTime time : kTestingTimes) {
    const AggregateStats& a = report.at(time);
    const std::string tag = to_string(time);
    const std::array<std::pair<const char*, const SampleSummary*>, 4> metrics = {{
        {"discounted_reward", &a.discounted_reward},
        {"flags_collected", &a.flags_collected},
        {"success_rate", &a.success_rate},
        {"steps_successful", &a.steps_successful},
    }};
    for (const auto& [name, s] : metrics) rows.push_back({setup, tag, name, s->mean, s->std, s->n});
  }
  return rows;
}

void write_qtable_csv(std::ostream& out, const QTable& table) {
  const QTableDims& d = table.dims();
  out << "x,y,channel,action,value\n";
  for (int x = 0; x < d.width; ++x)
    for (int y = 0; y < d.height; ++y)
      for (int c = 0; c < d.channels; ++c)
        for (int a = 0; a < d.actions; ++a)
          out << x << ',' << y << ',' << c << ',' << a << ',' << format_double(table.at(x, y, c, a)) << '\n';
}

QTable read_qtable_csv(std::istream& in) {
  std::string line;
  if (!next_line(in, line) || line != "x,y,channel,action,value") {
    throw UsageError("Q-table CSV: unexpected header");
  }
  struct Entry {
    int x, y, c, a;
    double v;
  };
  std::vector<Entry> entries;
  QTableDims dims{0, 0, 0, 0};
  while (next_line(in, line)) {
    const auto f = split_csv_line(line);
    if (f.size() != 5) throw UsageError("Q-table CSV: expected 5 fields");
    Entry e{parse_integer<int>(f[0]), parse_integer<int>(f[1]), parse_integer<int>(f[2]),
            parse_integer<int>(f[3]), parse_double(f[4])};
    if (e.x < 0 || e.y < 0 || e.c < 0 || e.a < 0) throw UsageError("Q-table CSV: negative index");
    dims.width = std::max(dims.width, e.x + 1);
    dims.height = std::max(dims.height, e.y + 1);
    dims.channels = std::max(dims.channels, e.c + 1);
    dims.actions = std::max(dims.actions, e.a + 1);
    entries.push_back(e);
  }
  if (entries.size() != dims.size() || entries.empty()) throw UsageError("Q-table CSV: incomplete table");
  QTable table = init_qtable(dims, 0.0);
  for (const Entry& e : entries) table.at(e.x, e.y, e.c, e.a) = e.v;
  return table;
}

namespace {

constexpr char kMagic[8] = {'D', 'E', 'Q', 'T', 'Q', 'T', '0', '1'};

template <typename T>
void write_le(std::ostream& out, T value) {
  auto bits = std::bit_cast<std::array<unsigned char, sizeof(T)>>(value);
  if constexpr (std::endian::native == std::endian::big) std::reverse(bits.begin(), bits.end());
  out.write(reinterpret_cast<const char*>(bits.data()), sizeof(T));
}

template <typename T>
T read_le(std::istream& in) {
  std::array<unsigned char, sizeof(T)> bits{};
  if (!in.read(reinterpret_cast<char*>(bits.data()), sizeof(T))) throw UsageError("Q-table binary: truncated");
  if constexpr (std::endian::native == std::endian::big) std::reverse(bits.begin(), bits.end());
  return std::bit_cast<T>(bits);
}

}  // namespace

void write_qtable_binary(std::ostream& out, const QTable& table) {
  const QTableDims& d = table.dims();
  out.write(kMagic, sizeof(kMagic));
  for (int v : {d.width, d.height, d.channels, d.actions}) write_le(out, static_cast<std::uint32_t>(v));
  for (int x = 0; x < d.width; ++x)
    for (int y = 0; y < d.height; ++y)
      for (int c = 0; c < d.channels; ++c)
        for (int a = 0; a < d.actions; ++a) write_le(out, table.at(x, y, c, a));
  if (!out) throw IoError("Q-table binary: write failed");
}

QTable read_qtable_binary(std::istream& in) {
  char magic[8];
  if (!in.read(magic, sizeof(magic)) || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) {
    throw UsageError("Q-table binary: bad magic");
  }
  QTableDims d;
  d.width = static_cast<int>(read_le<std::uint32_t>(in));
  d.height = static_cast<int>(read_le<std::uint32_t>(in));
  d.channels = static_cast<int>(read_le<std::uint32_t>(in));
  d.actions = static_cast<int>(read_le<std::uint32_t>(in));
  QTable table = init_qtable(d, 0.0);
  for (int x = 0; x < d.width; ++x)
    for (int y = 0; y < d.height; ++y)
      for (int c = 0; c < d.channels; ++c)
        for (int a = 0; a < d.actions; ++a) table.at(x, y, c, a) = read_le<double>(in);
  return table;
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  return out;
}

}  // namespace deqt
