#include "cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "jumpcoach/beatmap.hpp"
#include "jumpcoach/error.hpp"
#include "jumpcoach/jump.hpp"
#include "jumpcoach/lint.hpp"
#include "jumpcoach/pose_io.hpp"
#include "jumpcoach/report.hpp"
#include "jumpcoach/session.hpp"

namespace jumpcoach::cli {

namespace fs = std::filesystem;
using nlohmann::json;
using nlohmann::ordered_json;

namespace {

struct Failure {
  int code;
  std::string message;
};

/// --config FILE: a JSON object whose keys are the long flag names.
/// {"threshold": {"name": v}} and {"flaw": {"Kind": v}} expand to the
/// repeated name=value form the flags take. The expanded flags go right after
/// the subcommand, so flags on the command line win.
std::vector<std::string> expandConfig(const std::vector<std::string>& args) {
  if (args.empty() || (args[0] != "simulate" && args[0] != "analyze")) return args;
  std::vector<std::string> rest{args[0]};
  std::optional<std::string> file;
  for (std::size_t i = 1; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 == args.size()) throw Failure{kConfigError, "--config needs a file"};
      file = args[++i];
    } else if (args[i].rfind("--config=", 0) == 0) {
      file = args[i].substr(9);
    } else {
      rest.push_back(args[i]);
    }
  }
  if (!file) return args;

  std::ifstream in(*file, std::ios::binary);
  if (!in) throw Failure{kIoError, "cannot read config " + *file};
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw Failure{kParseError, *file + ": malformed JSON: " + e.what()};
  }
  if (!j.is_object()) throw Failure{kConfigError, *file + ": config must be a JSON object"};

  auto scalar = [](const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
  std::vector<std::string> expanded{args[0]};
  for (const auto& [key, value] : j.items()) {
    const std::string flag = "--" + key;
    if (value.is_boolean()) {
      if (value.get<bool>()) expanded.push_back(flag);
    } else if (value.is_object()) {
      for (const auto& [k, v] : value.items()) expanded.insert(expanded.end(), {flag, k + "=" + scalar(v)});
    } else if (value.is_array()) {
      for (const auto& v : value) expanded.insert(expanded.end(), {flag, scalar(v)});
    } else {
      expanded.insert(expanded.end(), {flag, scalar(value)});
    }
  }
  expanded.insert(expanded.end(), rest.begin() + 1, rest.end());
  return expanded;
}

fs::path assetDir() {
  if (const char* env = std::getenv("JUMPCOACH_ASSETS"); env && *env) return env;
  return JUMPCOACH_DEFAULT_ASSET_DIR;
}

ReportFormat parseFormat(const std::string& s) {
  auto f = reportFormatFromString(s);
  if (!f) throw Failure{kConfigError, "unknown format \"" + s + "\" (json or text)"};
  return *f;
}

std::pair<std::string, double> splitAssignment(const std::string& s, const char* what) {
  const auto eq = s.find('=');
  if (eq == std::string::npos) throw Failure{kConfigError, std::string(what) + " must be NAME=VALUE, got \"" + s + "\""};
  const std::string value = s.substr(eq + 1);
  char* end = nullptr;
  const double v = std::strtod(value.c_str(), &end);
  if (value.empty() || *end != '\0') throw Failure{kConfigError, std::string(what) + " value is not a number: " + s};
  return {s.substr(0, eq), v};
}

TechniqueThresholds applyThresholds(const std::vector<std::string>& overrides) {
  TechniqueThresholds th;
  for (const auto& o : overrides) {
    const auto [name, value] = splitAssignment(o, "--threshold");
    if (!th.set(name, value)) throw Failure{kConfigError, "unknown threshold \"" + name + "\""};
  }
  return th;
}

void writeText(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f || !(f << text)) throw Failure{kIoError, "cannot write " + path};
}

void requireReadable(const fs::path& p) {
  std::error_code ec;
  if (!fs::is_regular_file(p, ec)) throw Failure{kIoError, "cannot read " + p.string()};
}

std::string slurp(const fs::path& p) {
  requireReadable(p);
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

LevelMaps loadMaps() {
  try {
    return loadBundledMaps(assetDir());
  } catch (const Error& e) {
    throw Failure{e.code() == ErrorCode::ParseError ? kParseError : kIoError, "bundled maps: " + std::string(e.what())};
  }
}

// --- simulate --------------------------------------------------------------

struct SimulateArgs {
  std::uint64_t seed = kDefaultSeed;
  int seeds = 1;
  bool summary = false;
  PlayerModel model;
  std::vector<std::string> flaws;
  std::vector<std::string> thresholds;
  bool noJumpLevel = false;
  std::string format = "json";
  std::string output;
  std::string poseOut;
  std::string calibrationOut;
};

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

std::string summarize(const SimulateArgs& a, const std::vector<SessionReport>& reports, ReportFormat format) {
  std::vector<double> ratios, hard;
  std::array<double, 3> levelSum{};
  std::array<int, 3> levelCount{};
  int inBand = 0;
  for (const auto& r : reports) {
    const double h = r.overallHitRatio();
    ratios.push_back(h);
    hard.push_back(r.overallDwell()[2]);
    if (h >= 0.60 && h <= 0.90) ++inBand;
    for (const auto& l : r.levels) {
      const auto i = static_cast<std::size_t>(l.kind);
      levelSum[i] += l.score.hitRatio;
      ++levelCount[i];
    }
  }
  const double n = static_cast<double>(reports.size());
  const double mean = std::accumulate(ratios.begin(), ratios.end(), 0.0) / n;
  ordered_json j;
  j["firstSeed"] = a.seed;
  j["seeds"] = a.seeds;
  j["skill"] = a.model.baseSkill;
  j["hitRatio"] = {{"mean", mean},
                   {"median", median(ratios)},
                   {"min", *std::min_element(ratios.begin(), ratios.end())},
                   {"max", *std::max_element(ratios.begin(), ratios.end())}};
  j["designBandFraction"] = inBand / n;
  ordered_json levels;
  for (std::size_t i = 0; i < 3; ++i) {
    if (levelCount[i] == 0) continue;
    levels[std::string(toString(static_cast<LevelKind>(i)))] = levelSum[i] / levelCount[i];
  }
  j["levelHitRatio"] = levels;
  j["hardDwellMedian"] = median(hard);
  if (format == ReportFormat::Json) return j.dump(2) + "\n";

  char buf[256];
  std::string out;
  std::snprintf(buf, sizeof buf, "seeds %llu..%llu, skill %.2f\n", static_cast<unsigned long long>(a.seed),
                static_cast<unsigned long long>(a.seed + a.seeds - 1), a.model.baseSkill);
  out += buf;
  std::snprintf(buf, sizeof buf, "hit ratio: mean %.3f median %.3f min %.3f max %.3f\n", mean, median(ratios),
                j["hitRatio"]["min"].get<double>(), j["hitRatio"]["max"].get<double>());
  out += buf;
  std::snprintf(buf, sizeof buf, "in 0.60-0.90 band: %.0f%%\nhard-tier dwell median: %.3f\n", 100.0 * inBand / n,
                median(hard));
  out += buf;
  return out;
}

int simulate(SimulateArgs a, std::ostream& out) {
  const ReportFormat format = parseFormat(a.format);
  for (const auto& f : a.flaws) {
    const auto [name, value] = splitAssignment(f, "--flaw");
    auto kind = flawKindFromString(name);
    if (!kind) throw Failure{kConfigError, "unknown flaw \"" + name + "\""};
    a.model.flaws.push_back({*kind, value});
  }
  try {
    a.model.validate();
  } catch (const Error& e) {
    throw Failure{kConfigError, e.what()};
  }
  if (a.seeds < 1) throw Failure{kConfigError, "--seeds must be at least 1"};
  if (a.seeds > 1 && (!a.poseOut.empty() || !a.calibrationOut.empty())) {
    throw Failure{kConfigError, "--pose-out and --calibration-out need a single seed"};
  }

  SessionConfig cfg;
  cfg.thresholds = applyThresholds(a.thresholds);
  cfg.playJumpLevel = !a.noJumpLevel;
  const LevelMaps maps = loadMaps();

  if (a.seeds == 1 && !a.summary) {
    const GeneratedSession s = generateSession(a.model, maps, a.seed, cfg);
    if (!a.poseOut.empty()) {
      std::ostringstream ss;
      writePoseJsonl(ss, s.frames);
      writeText(a.poseOut, ss.str(), out);
    }
    if (!a.calibrationOut.empty()) writeText(a.calibrationOut, calibrationToJson(s.calibration), out);
    writeText(a.output, renderReport(s.report, format), out);
    return kOk;
  }

  std::vector<SessionReport> reports;
  for (int k = 0; k < a.seeds; ++k) reports.push_back(generateSession(a.model, maps, a.seed + k, cfg).report);
  if (a.summary) {
    writeText(a.output, summarize(a, reports, format), out);
    return kOk;
  }
  std::string text;
  for (const auto& r : reports) {
    text += format == ReportFormat::Json ? toJson(r).dump() + "\n" : renderReport(r, format) + "\n";
  }
  writeText(a.output, text, out);
  return kOk;
}

// --- analyze ---------------------------------------------------------------

struct AnalyzeArgs {
  std::string input;
  std::string calibration;
  std::string replayDir;
  std::vector<std::string> thresholds;
  std::string format = "json";
  std::string output;
};

int analyze(const AnalyzeArgs& a, std::ostream& out) {
  const ReportFormat format = parseFormat(a.format);
  const TechniqueThresholds th = applyThresholds(a.thresholds);
  requireReadable(a.input);
  PoseStream frames;
  try {
    frames = readPoseJsonlFile(a.input);
  } catch (const ParseError& e) {
    throw Failure{kParseError, a.input + ": " + e.what()};
  }

  CalibrationProfile cal;
  if (!a.calibration.empty()) {
    const std::string text = slurp(a.calibration);
    try {
      cal = calibrationFromJson(text);
    } catch (const Error& e) {
      throw Failure{kParseError, a.calibration + ": " + e.what()};
    }
  } else {
    try {
      cal = calibrateFromStream(frames);
    } catch (const Error& e) {
      throw Failure{kNoCalibration, "no calibration window found: " + std::string(e.what())};
    }
  }

  std::vector<JumpRecord> records = analyzeJumps(frames, cal, th);
  std::vector<JumpEntry> entries;
  for (std::size_t k = 0; k < records.size(); ++k) {
    entries.push_back({records[k], makeFeedback(records[k], k ? &records[k - 1] : nullptr)});
  }
  if (!a.replayDir.empty()) {
    std::error_code ec;
    fs::create_directories(a.replayDir, ec);
    for (std::size_t k = 0; k < records.size(); ++k) {
      const fs::path p = fs::path(a.replayDir) / ("jump" + std::to_string(k + 1) + ".jsonl");
      std::ostringstream ss;
      writePoseJsonl(ss, replayExport(records[k], th.filterCutoffHz));
      writeText(p.string(), ss.str(), out);
    }
  }
  for (auto& e : entries) e.record.samples.clear();
  writeText(a.output, renderJumpReport(entries, format), out);
  return kOk;
}

// --- validate-map ----------------------------------------------------------

int validateMaps(std::vector<std::string> files, std::ostream& out) {
  if (files.empty()) {
    for (const char* name : {"tap.json", "hop.json", "obstacle.json"}) files.push_back((assetDir() / "maps" / name).string());
  }
  int worst = kOk;
  for (const auto& file : files) {
    const std::string text = slurp(file);
    BeatMap map;
    try {
      map = parseMap(text);
    } catch (const ParseError& e) {
      out << file << ": parse error: " << e.what() << "\n";
      worst = std::max(worst, static_cast<int>(kParseError));
      continue;
    } catch (const Error& e) {
      out << file << ": schema: " << e.what() << "\n";
      worst = std::max(worst, static_cast<int>(kFindings));
      continue;
    }
    const auto findings = lintMap(map);
    for (const auto& f : findings) {
      out << file << ": (" << ruleTag(f.rule) << ") ";
      if (f.rule == LintRule::BundledCount) {
        out << toString(ErrorCode::CountMismatch) << ": ";
      } else {
        out << "tier " << toString(tierFromIndex(f.tier)) << " beat " << f.beat << ": ";
      }
      out << f.message << "\n";
    }
    if (findings.empty()) out << file << ": ok\n";
    else worst = std::max(worst, static_cast<int>(kFindings));
  }
  return worst;
}

// --- report ----------------------------------------------------------------

int report(const std::string& input, const std::string& formatName, const std::string& output, std::ostream& out) {
  const ReportFormat format = parseFormat(formatName);
  const std::string text = slurp(input);
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Failure{kParseError, input + ": malformed JSON: " + e.what()};
  }
  try {
    if (j.is_object() && j.size() == 1 && j.contains("jumps")) {
      std::vector<JumpEntry> jumps;
      for (const auto& e : j.at("jumps")) jumps.push_back(jumpEntryFromJson(e));
      writeText(output, renderJumpReport(jumps, format), out);
    } else {
      writeText(output, renderReport(sessionReportFromJson(j), format), out);
    }
  } catch (const Error& e) {
    throw Failure{kParseError, input + ": " + e.what()};
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Jump-training exergame engine: simulate sessions, analyze pose recordings, lint beat maps."};
  app.name("jumpcoach");
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  const std::vector<std::string> formats{"json", "text"};

  SimulateArgs sim;
  auto* simCmd = app.add_subcommand("simulate", "Play a full session with a synthetic player");
  std::string configFile;  // expanded by expandConfig before parsing; listed here for --help
  simCmd->add_option("--config", configFile, "JSON file whose keys mirror the long flag names");
  simCmd->add_option("--seed", sim.seed, "RNG seed")->capture_default_str();
  simCmd->add_option("--seeds", sim.seeds, "Run this many consecutive seeds")->capture_default_str();
  simCmd->add_flag("--summary", sim.summary, "Print aggregate statistics instead of reports");
  simCmd->add_option("--skill", sim.model.baseSkill, "Per-note success probability at Medium (>= 1: flawless)")
      ->capture_default_str();
  simCmd->add_option("--height", sim.model.heightM, "Player height in m")->capture_default_str();
  simCmd->add_option("--tier-delta", sim.model.tierSkillDelta, "Skill change per tier step")->capture_default_str();
  simCmd->add_option("--jitter-ms", sim.model.timingJitterMs, "Action timing stddev")->capture_default_str();
  simCmd->add_option("--noise", sim.model.noiseSigmaM, "Tracker noise stddev in m")->capture_default_str();
  simCmd->add_option("--drift", sim.model.driftRatePerAction, "Forward drift per action in m")->capture_default_str();
  simCmd->add_option("--airtime", sim.model.jumpAirtimeS, "Airtime of maximal jumps in s")->capture_default_str();
  simCmd->add_option("--flaw", sim.flaws, "Technique flaw KIND=VALUE (StaggeredFeet ms, HardLanding mm, "
                                          "KneeCollapse ratio, ArmOverswing m, ArmAsync ms)")
      ->take_all();
  simCmd->add_option("--threshold", sim.thresholds, "Override a technique threshold NAME=VALUE")->take_all();
  simCmd->add_flag("--no-jump-level", sim.noJumpLevel, "Skip the maximal-jump level");
  simCmd->add_option("--format", sim.format, "Report format")->check(CLI::IsMember(formats))->capture_default_str();
  simCmd->add_option("-o,--output", sim.output, "Report file (default stdout)");
  simCmd->add_option("--pose-out", sim.poseOut, "Also write the pose stream as JSONL");
  simCmd->add_option("--calibration-out", sim.calibrationOut, "Also write the calibration profile");

  AnalyzeArgs an;
  auto* anCmd = app.add_subcommand("analyze", "Detect and score maximal jumps in a pose recording");
  anCmd->add_option("--config", configFile, "JSON file whose keys mirror the long flag names");
  anCmd->add_option("input", an.input, "Pose stream (JSONL)")->required();
  anCmd->add_option("--calibration", an.calibration, "Calibration profile JSON (default: first 3 s of the stream)");
  anCmd->add_option("--replay-dir", an.replayDir, "Write a filtered replay per jump into this directory");
  anCmd->add_option("--threshold", an.thresholds, "Override a technique threshold NAME=VALUE")->take_all();
  anCmd->add_option("--format", an.format, "Report format")->check(CLI::IsMember(formats))->capture_default_str();
  anCmd->add_option("-o,--output", an.output, "Report file (default stdout)");

  std::vector<std::string> mapFiles;
  auto* valCmd = app.add_subcommand("validate-map", "Check beat maps against the schema and pattern rules");
  valCmd->add_option("maps", mapFiles, "Map files (default: the bundled maps)")->take_all();

  std::string reportInput, reportFormat = "text", reportOutput;
  auto* repCmd = app.add_subcommand("report", "Render a saved session or jump report");
  repCmd->add_option("input", reportInput, "Report JSON")->required();
  repCmd->add_option("--format", reportFormat, "Output format")->check(CLI::IsMember(formats))->capture_default_str();
  repCmd->add_option("-o,--output", reportOutput, "Output file (default stdout)");

  std::vector<std::string> expanded;
  try {
    expanded = expandConfig(args);
  } catch (const Failure& f) {
    err << "jumpcoach: " << f.message << "\n";
    return f.code;
  }
  std::vector<std::string> reversed(expanded.rbegin(), expanded.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? kOk : kConfigError;
  }

  try {
    if (simCmd->parsed()) return simulate(sim, out);
    if (anCmd->parsed()) return analyze(an, out);
    if (valCmd->parsed()) return validateMaps(mapFiles, out);
    if (repCmd->parsed()) return report(reportInput, reportFormat, reportOutput, out);
  } catch (const Failure& f) {
    err << "jumpcoach: " << f.message << "\n";
    return f.code;
  } catch (const Error& e) {
    err << "jumpcoach: " << e.what() << "\n";
    return kConfigError;
  }
  return kConfigError;
}

}  // namespace jumpcoach::cli
