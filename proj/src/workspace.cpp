#include "causal_econ/workspace.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>

#include "causal_econ/fixtures.hpp"
#include "causal_econ/json_io.hpp"

namespace causal_econ {

namespace fs = std::filesystem;

namespace {

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw Error(ErrorCode::io_error, "cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file_atomically(const fs::path& p, std::string_view content) {
  auto tmp = p;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::io_error, "cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw Error(ErrorCode::io_error, "cannot write " + tmp.string());
  }
  fs::rename(tmp, p);
}

std::string file_safe(std::string_view s) {
  std::string out;
  for (char c : s)
    out += (std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_') ? c : '_';
  return out.empty() ? "_" : out.substr(0, 64);
}

}  // namespace

std::string utc_timestamp() {
  using namespace std::chrono;
  const auto now = system_clock::now();
  const auto secs = time_point_cast<seconds>(now);
  const auto micros = duration_cast<microseconds>(now - secs).count();
  const std::time_t t = system_clock::to_time_t(secs);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%04d-%02d-%02dT%02d:%02d:%02d.%06lldZ", tm.tm_year + 1900,
                tm.tm_mon + 1, tm.tm_mday, tm.tm_hour, tm.tm_min, tm.tm_sec,
                static_cast<long long>(micros));
  return buf;
}

Workspace::Workspace(fs::path root) : root_(std::move(root)) {
  fs::create_directories(root_ / "diagrams");
  fs::create_directories(root_ / "submissions");
  load_index();
}

bool Workspace::valid_name(std::string_view name) {
  if (name.empty() || name.size() > 128 || name.front() == '.') return false;
  return std::all_of(name.begin(), name.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.';
  });
}

fs::path Workspace::diagram_path(std::string_view name) const {
  return root_ / "diagrams" / (std::string(name) + ".cdg");
}

bool Workspace::is_fixture(std::string_view name) const {
  const auto names = fixtures::names();
  return std::find(names.begin(), names.end(), name) != names.end();
}

std::vector<DiagramEntry> Workspace::diagrams() const {
  std::vector<DiagramEntry> out;
  for (auto n : fixtures::names()) out.push_back({std::string(n), true});
  std::vector<std::string> stored;
  std::shared_lock lock(mutex_);
  for (const auto& entry : fs::directory_iterator(root_ / "diagrams")) {
    if (entry.path().extension() != ".cdg") continue;
    auto stem = entry.path().stem().string();
    if (!is_fixture(stem)) stored.push_back(std::move(stem));
  }
  std::sort(stored.begin(), stored.end());
  for (auto& s : stored) out.push_back({std::move(s), false});
  return out;
}

std::optional<CausalDiagram> Workspace::diagram(std::string_view name) const {
  if (auto f = fixtures::by_name(name)) return f;
  if (!valid_name(name)) return std::nullopt;
  std::shared_lock lock(mutex_);
  const auto path = diagram_path(name);
  if (!fs::exists(path)) return std::nullopt;
  auto parsed = parse_diagram(read_file(path));
  if (!parsed) throw Error(ErrorCode::parse_error, "stored diagram " + path.string() + " is malformed");
  return std::move(*parsed.value);
}

bool Workspace::put_diagram(const CausalDiagram& diagram) {
  if (!valid_name(diagram.name()))
    throw Error(ErrorCode::invalid_parameter, "'" + diagram.name() + "' is not a valid diagram name");
  if (is_fixture(diagram.name()))
    throw Error(ErrorCode::conflict, "'" + diagram.name() + "' is a built-in fixture");
  std::unique_lock lock(mutex_);
  const auto path = diagram_path(diagram.name());
  const bool existed = fs::exists(path);
  write_file_atomically(path, serialize_diagram(diagram));
  return existed;
}

void Workspace::load_index() {
  const auto path = root_ / "submissions" / "index.jsonl";
  if (!fs::exists(path)) return;
  std::ifstream in(path, std::ios::binary);
  std::string line;
  while (std::getline(in, line)) {
    // A record without its trailing newline was never committed.
    if (in.eof()) break;
    if (line.empty()) continue;
    try {
      const auto j = Json::parse(line);
      index_.push_back({j.at("skeleton").get<std::string>(), j.at("student").get<std::string>(),
                        j.at("timestamp").get<std::string>(), j.at("file").get<std::string>()});
    } catch (const nlohmann::json::exception&) {
      throw Error(ErrorCode::io_error, "corrupt submission index " + path.string());
    }
  }
}

SubmissionRecord Workspace::submit(const AnswerSheet& sheet, std::optional<std::string> timestamp) {
  const auto reference = diagram(sheet.skeleton);
  if (!reference) throw Error(ErrorCode::not_found, "unknown skeleton '" + sheet.skeleton + "'");
  // Shape check against the skeleton before anything touches disk.
  grade(*reference, sheet);

  std::unique_lock lock(mutex_);
  const auto taken = [&](const std::string& ts) {
    return std::any_of(index_.begin(), index_.end(), [&](const SubmissionRecord& r) {
      return r.skeleton == sheet.skeleton && r.student == sheet.student && r.timestamp == ts;
    });
  };
  std::string ts;
  if (timestamp) {
    ts = *timestamp;
    if (ts.empty()) throw Error(ErrorCode::invalid_parameter, "empty timestamp");
    if (taken(ts))
      throw Error(ErrorCode::conflict, "submission for " + sheet.student + " at " + ts + " already stored");
  } else {
    do ts = utc_timestamp();
    while (taken(ts));
  }

  const auto dir = fs::path("submissions") / file_safe(sheet.skeleton);
  fs::create_directories(root_ / dir);
  char seq[16];
  std::snprintf(seq, sizeof seq, "%06zu", index_.size() + 1);
  const auto rel = dir / (std::string(seq) + "_" + file_safe(sheet.student) + ".ans");
  write_file_atomically(root_ / rel, serialize_answer_sheet(sheet));

  SubmissionRecord record{sheet.skeleton, sheet.student, ts, rel.generic_string()};
  const Json j = {{"skeleton", record.skeleton},
                  {"student", record.student},
                  {"timestamp", record.timestamp},
                  {"file", record.file}};
  std::ofstream index(root_ / "submissions" / "index.jsonl", std::ios::binary | std::ios::app);
  index << j.dump() << '\n';
  index.flush();
  if (!index) throw Error(ErrorCode::io_error, "cannot append to submission index");
  index_.push_back(record);
  return record;
}

std::vector<SubmissionRecord> Workspace::submissions(std::optional<std::string_view> skeleton) const {
  std::shared_lock lock(mutex_);
  std::vector<SubmissionRecord> out;
  for (const auto& r : index_)
    if (!skeleton || r.skeleton == *skeleton) out.push_back(r);
  return out;
}

AnswerSheet Workspace::load_submission(const SubmissionRecord& record) const {
  const auto reference = diagram(record.skeleton);
  if (!reference) throw Error(ErrorCode::not_found, "unknown skeleton '" + record.skeleton + "'");
  auto parsed = parse_answer_sheet(read_file(root_ / record.file), skeleton_of(*reference));
  if (!parsed) throw Error(ErrorCode::parse_error, "stored sheet " + record.file + " is malformed");
  return std::move(*parsed.value);
}

std::vector<ScoreReport> Workspace::graded_submissions(std::string_view skeleton, bool all_attempts) const {
  const auto reference = diagram(skeleton);
  if (!reference) throw Error(ErrorCode::not_found, "unknown skeleton '" + std::string(skeleton) + "'");

  auto records = submissions(skeleton);
  std::stable_sort(records.begin(), records.end(), [](const auto& a, const auto& b) {
    return std::tie(a.student, a.timestamp) < std::tie(b.student, b.timestamp);
  });
  if (!all_attempts) {
    std::map<std::string, SubmissionRecord> latest;
    for (auto& r : records) latest[r.student] = r;  // sorted, so the last one wins
    records.clear();
    for (auto& [_, r] : latest) records.push_back(std::move(r));
  }
  std::vector<ScoreReport> out;
  for (const auto& r : records) out.push_back(grade(*reference, load_submission(r)));
  return out;
}

}  // namespace causal_econ
