#include "jumpcoach/report.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

namespace jumpcoach {

using ojson = nlohmann::ordered_json;
using nlohmann::json;

std::optional<ReportFormat> reportFormatFromString(std::string_view s) {
  if (s == "json") return ReportFormat::Json;
  if (s == "text") return ReportFormat::Text;
  return std::nullopt;
}

namespace {

[[noreturn]] void schema(const std::string& m) { throw Error(ErrorCode::SchemaViolation, "report: " + m); }

template <class E, class F>
E enumFrom(const json& j, F parse, const char* what) {
  if (!j.is_string()) schema(std::string(what) + " must be a string");
  auto v = parse(j.get<std::string>());
  if (!v) schema(std::string("unknown ") + what + " \"" + j.get<std::string>() + "\"");
  return *v;
}

std::optional<Tier> tierFromString(std::string_view s) {
  for (int i = 0; i < kTierCount; ++i) {
    if (toString(tierFromIndex(i)) == s) return tierFromIndex(i);
  }
  return std::nullopt;
}

std::optional<SafetyStatus> statusFromString(std::string_view s) {
  for (SafetyStatus st : {SafetyStatus::Ok, SafetyStatus::Warn, SafetyStatus::Paused}) {
    if (toString(st) == s) return st;
  }
  return std::nullopt;
}

std::string_view toString(MessageSlot s) { return s == MessageSlot::InterLevelBreak ? "InterLevelBreak" : "PostJump"; }

std::optional<MessageSlot> slotFromString(std::string_view s) {
  if (s == "InterLevelBreak") return MessageSlot::InterLevelBreak;
  if (s == "PostJump") return MessageSlot::PostJump;
  return std::nullopt;
}

double number(const json& j) {
  if (j.is_null()) return std::numeric_limits<double>::quiet_NaN();
  if (!j.is_number()) schema("expected a number");
  return j.get<double>();
}

ojson dwellJson(const DwellFractions& d) {
  ojson j;
  j["easy"] = d[0];
  j["medium"] = d[1];
  j["hard"] = d[2];
  return j;
}

ojson noteJson(const JudgedNote& n) {
  ojson j;
  j["beat"] = n.note.beat;
  j["lane"] = n.note.lane;
  j["kind"] = toString(n.note.kind);
  ojson size = ojson::object();
  if (n.note.size.height) size["height"] = *n.note.size.height;
  if (n.note.size.clearance) size["clearance"] = *n.note.size.clearance;
  if (n.note.size.edge) size["edge"] = *n.note.size.edge;
  if (!size.empty()) j["sizeParams"] = size;
  j["tier"] = toString(n.tier);
  j["time"] = n.time;
  j["outcome"] = toString(n.outcome);
  j["errorMs"] = n.errorMs;
  j["violation"] = n.violation ? ojson(toString(*n.violation)) : ojson(nullptr);
  j["suspended"] = n.suspended;
  return j;
}

JudgedNote noteFromJson(const json& j) {
  JudgedNote n;
  n.note.beat = number(j.at("beat"));
  n.note.lane = j.at("lane").get<int>();
  n.note.kind = enumFrom<NoteKind>(j.at("kind"), noteKindFromString, "note kind");
  if (auto s = j.find("sizeParams"); s != j.end()) {
    if (s->contains("height")) n.note.size.height = number(s->at("height"));
    if (s->contains("clearance")) n.note.size.clearance = number(s->at("clearance"));
    if (s->contains("edge")) n.note.size.edge = number(s->at("edge"));
  }
  n.tier = enumFrom<Tier>(j.at("tier"), tierFromString, "tier");
  n.time = number(j.at("time"));
  n.outcome = j.at("outcome").get<std::string>() == "Hit" ? Outcome::Hit : Outcome::Miss;
  n.errorMs = number(j.at("errorMs"));
  if (!j.at("violation").is_null()) n.violation = enumFrom<Violation>(j.at("violation"), violationFromString, "violation");
  n.suspended = j.at("suspended").get<bool>();
  return n;
}

ojson levelJson(const LevelReport& l, int number) {
  ojson j;
  j["level"] = number;
  j["kind"] = toString(l.kind);
  j["startT"] = l.startT;
  j["endT"] = l.endT;
  j["hitRatio"] = l.score.hitRatio;
  j["hits"] = l.score.hits;
  j["total"] = l.score.total;
  j["score"] = l.score.score;
  j["dwellFractions"] = dwellJson(l.dwell);
  ojson log = ojson::array();
  for (const auto& d : l.dwellLog) {
    ojson e;
    e["tier"] = toString(d.tier);
    e["enterT"] = d.enterT;
    e["exitT"] = d.exitT;
    log.push_back(e);
  }
  j["dwellLog"] = log;
  ojson notes = ojson::array();
  for (const auto& n : l.notes) notes.push_back(noteJson(n));
  j["judgedNotes"] = notes;
  return j;
}

LevelReport levelFromJson(const json& j) {
  LevelReport l;
  l.kind = enumFrom<LevelKind>(j.at("kind"), levelKindFromString, "level kind");
  l.startT = number(j.at("startT"));
  l.endT = number(j.at("endT"));
  l.score.hitRatio = number(j.at("hitRatio"));
  l.score.hits = j.at("hits").get<int>();
  l.score.total = j.at("total").get<int>();
  l.score.score = number(j.at("score"));
  const json& d = j.at("dwellFractions");
  l.dwell = {number(d.at("easy")), number(d.at("medium")), number(d.at("hard"))};
  for (const json& e : j.at("dwellLog")) {
    l.dwellLog.push_back({enumFrom<Tier>(e.at("tier"), tierFromString, "tier"), number(e.at("enterT")),
                          number(e.at("exitT"))});
  }
  for (const json& n : j.at("judgedNotes")) l.notes.push_back(noteFromJson(n));
  return l;
}

}  // namespace

ojson toJson(const JumpEntry& e) {
  const JumpRecord& r = e.record;
  ojson j;
  j["takeoffT"] = r.takeoffT;
  j["landingT"] = r.landingT;
  j["airtimeS"] = r.airtimeS;
  j["heightM"] = r.heightM;
  j["legTakeoffT"] = {r.legTakeoffT[0], r.legTakeoffT[1]};
  j["legLandingT"] = {r.legLandingT[0], r.legLandingT[1]};
  ojson criteria;
  for (Criterion c : kAllCriteria) {
    ojson cj;
    cj["score"] = r.result(c).score;
    cj["pass"] = r.result(c).pass;
    criteria[std::string(toString(c))] = cj;
  }
  j["criteria"] = criteria;
  ojson arms;
  arms["syncOk"] = r.arms.syncOk;
  arms["bandOk"] = r.arms.bandOk;
  arms["arcOk"] = r.arms.arcOk;
  arms["tooHigh"] = r.arms.tooHigh;
  arms["tooLow"] = r.arms.tooLow;
  arms["peakGapS"] = r.arms.peakGapS;
  arms["peakHeightGapM"] = r.arms.peakHeightGapM;
  arms["meanPeakM"] = r.arms.meanPeakM;
  arms["descentM"] = r.arms.descentM;
  j["arms"] = arms;
  ojson fb;
  fb["worstCriterion"] = toString(e.feedback.worst);
  fb["instruction"] = e.feedback.instruction;
  fb["techniqueScore"] = e.feedback.techniqueScore;
  fb["improvementDelta"] = e.feedback.improvementDelta;
  fb["jumpScore"] = e.feedback.jumpScore;
  fb["heightM"] = e.feedback.heightM;
  j["feedback"] = fb;
  return j;
}

JumpEntry jumpEntryFromJson(const json& j) {
  try {
    JumpEntry e;
    JumpRecord& r = e.record;
    r.takeoffT = number(j.at("takeoffT"));
    r.landingT = number(j.at("landingT"));
    r.airtimeS = number(j.at("airtimeS"));
    r.heightM = number(j.at("heightM"));
    for (std::size_t i = 0; i < 2; ++i) {
      r.legTakeoffT[i] = number(j.at("legTakeoffT").at(i));
      r.legLandingT[i] = number(j.at("legLandingT").at(i));
    }
    for (Criterion c : kAllCriteria) {
      const json& cj = j.at("criteria").at(std::string(toString(c)));
      r.result(c) = {number(cj.at("score")), cj.at("pass").get<bool>()};
    }
    const json& a = j.at("arms");
    r.arms.syncOk = a.at("syncOk").get<bool>();
    r.arms.bandOk = a.at("bandOk").get<bool>();
    r.arms.arcOk = a.at("arcOk").get<bool>();
    r.arms.tooHigh = a.at("tooHigh").get<bool>();
    r.arms.tooLow = a.at("tooLow").get<bool>();
    r.arms.peakGapS = number(a.at("peakGapS"));
    r.arms.peakHeightGapM = number(a.at("peakHeightGapM"));
    r.arms.meanPeakM = number(a.at("meanPeakM"));
    r.arms.descentM = number(a.at("descentM"));
    const json& fb = j.at("feedback");
    e.feedback.worst = enumFrom<Criterion>(fb.at("worstCriterion"), criterionFromString, "criterion");
    e.feedback.instruction = fb.at("instruction").get<std::string>();
    e.feedback.techniqueScore = number(fb.at("techniqueScore"));
    e.feedback.improvementDelta = number(fb.at("improvementDelta"));
    e.feedback.jumpScore = fb.at("jumpScore").get<int>();
    e.feedback.heightM = number(fb.at("heightM"));
    return e;
  } catch (const json::exception& ex) {
    schema(ex.what());
  }
}

ojson jumpReportJson(std::span<const JumpEntry> jumps) {
  ojson j;
  j["jumps"] = ojson::array();
  for (const auto& e : jumps) j["jumps"].push_back(toJson(e));
  return j;
}

ojson toJson(const SessionReport& r) {
  ojson j;
  j["startT"] = r.startT;
  j["endT"] = r.endT;
  j["partial"] = r.partial;
  j["partialReason"] = r.partialReason;
  j["hitRatio"] = r.overallHitRatio();
  ojson levels = ojson::array();
  int number = 1;
  for (const auto& l : r.levels) levels.push_back(levelJson(l, number++));
  if (r.jumpLevel) {
    ojson jl;
    jl["level"] = number;
    jl["kind"] = "Jump";
    jl["startT"] = r.jumpLevel->startT;
    jl["endT"] = r.jumpLevel->endT;
    jl["target"] = r.jumpLevel->target;
    jl["jumps"] = r.jumps.size();
    levels.push_back(jl);
  }
  j["levels"] = levels;
  j["jumps"] = jumpReportJson(r.jumps)["jumps"];
  ojson hs = ojson::array();
  for (const auto& h : r.highscore) {
    ojson e;
    e["jump"] = h.jump;
    e["jumpScore"] = h.jumpScore;
    e["heightM"] = h.heightM;
    hs.push_back(e);
  }
  j["highscore"] = hs;
  ojson safety;
  safety["maxDriftM"] = r.safety.maxDriftM;
  safety["warnCount"] = r.safety.warnCount;
  safety["pausedS"] = r.safety.pausedS;
  ojson events = ojson::array();
  for (const auto& e : r.safetyEvents) {
    ojson ej;
    ej["t"] = e.t;
    ej["from"] = toString(e.from);
    ej["to"] = toString(e.to);
    events.push_back(ej);
  }
  safety["events"] = events;
  j["safety"] = safety;
  ojson messages = ojson::array();
  for (const auto& m : r.messages) {
    ojson mj;
    mj["slot"] = toString(m.slot);
    mj["after"] = m.after;
    mj["text"] = m.text;
    messages.push_back(mj);
  }
  j["messages"] = messages;
  return j;
}

SessionReport sessionReportFromJson(const json& j) {
  try {
    SessionReport r;
    r.startT = number(j.at("startT"));
    r.endT = number(j.at("endT"));
    r.partial = j.at("partial").get<bool>();
    r.partialReason = j.at("partialReason").get<std::string>();
    for (const json& l : j.at("levels")) {
      if (l.at("kind") == "Jump") {
        r.jumpLevel = JumpLevelReport{number(l.at("startT")), number(l.at("endT")), l.at("target").get<int>()};
      } else {
        r.levels.push_back(levelFromJson(l));
      }
    }
    for (const json& e : j.at("jumps")) r.jumps.push_back(jumpEntryFromJson(e));
    for (const json& h : j.at("highscore")) {
      r.highscore.push_back({h.at("jumpScore").get<int>(), number(h.at("heightM")), h.at("jump").get<int>()});
    }
    const json& s = j.at("safety");
    r.safety = {number(s.at("maxDriftM")), s.at("warnCount").get<int>(), number(s.at("pausedS"))};
    for (const json& e : s.at("events")) {
      r.safetyEvents.push_back({number(e.at("t")), enumFrom<SafetyStatus>(e.at("from"), statusFromString, "status"),
                                enumFrom<SafetyStatus>(e.at("to"), statusFromString, "status")});
    }
    for (const json& m : j.at("messages")) {
      r.messages.push_back({enumFrom<MessageSlot>(m.at("slot"), slotFromString, "message slot"),
                            m.at("after").get<int>(), m.at("text").get<std::string>()});
    }
    return r;
  } catch (const json::exception& ex) {
    schema(ex.what());
  }
}

namespace {

std::string fmt(const char* format, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, format, v);
  return buf;
}

void appendJumps(std::string& out, std::span<const JumpEntry> jumps) {
  out += "jumps: " + std::to_string(jumps.size()) + "\n";
  int k = 1;
  for (const auto& e : jumps) {
    out += "  jump " + std::to_string(k++) + ": height " + fmt("%.3f", e.record.heightM) + " m, airtime " +
           fmt("%.3f", e.record.airtimeS) + " s, score " + std::to_string(e.feedback.jumpScore) + ", technique " +
           fmt("%.2f", e.feedback.techniqueScore) + " (" + fmt("%+.2f", e.feedback.improvementDelta) + ")\n";
    out += "    criteria:";
    for (Criterion c : kAllCriteria) {
      out += " " + std::string(toString(c)) + " " + fmt("%.2f", e.record.result(c).score) +
             (e.record.result(c).pass ? " ok" : " FAIL");
    }
    out += "\n    worst " + std::string(toString(e.feedback.worst)) + ": " + e.feedback.instruction + "\n";
  }
}

}  // namespace

std::string renderReport(const SessionReport& r, ReportFormat format) {
  if (format == ReportFormat::Json) return toJson(r).dump(2) + "\n";
  std::string out;
  out += "session " + fmt("%.2f", r.startT) + " - " + fmt("%.2f", r.endT) + " s";
  out += r.partial ? " (partial: " + r.partialReason + ")\n" : "\n";
  int number = 1;
  for (const auto& l : r.levels) {
    out += "level " + std::to_string(number++) + " " + std::string(toString(l.kind)) + ": hit ratio " +
           fmt("%.3f", l.score.hitRatio) + " (" + std::to_string(l.score.hits) + "/" + std::to_string(l.score.total) +
           "), score " + fmt("%.0f", l.score.score) + ", dwell easy " + fmt("%.2f", l.dwell[0]) + " medium " +
           fmt("%.2f", l.dwell[1]) + " hard " + fmt("%.2f", l.dwell[2]) + "\n";
  }
  if (r.jumpLevel) out += "level " + std::to_string(number) + " Jump: " + std::to_string(r.jumps.size()) + "/" +
                          std::to_string(r.jumpLevel->target) + " jumps\n";
  appendJumps(out, r.jumps);
  if (!r.highscore.empty()) {
    out += "highscore:";
    for (const auto& h : r.highscore) {
      out += " " + std::to_string(h.jumpScore) + " (" + fmt("%.3f", h.heightM) + " m)";
    }
    out += "\n";
  }
  out += "safety: max drift " + fmt("%.3f", r.safety.maxDriftM) + " m, warnings " +
         std::to_string(r.safety.warnCount) + ", paused " + fmt("%.1f", r.safety.pausedS) + " s\n";
  for (const auto& m : r.messages) {
    if (m.slot == MessageSlot::InterLevelBreak) out += "break after level " + std::to_string(m.after) + ": " + m.text + "\n";
  }
  return out;
}

std::string renderJumpReport(std::span<const JumpEntry> jumps, ReportFormat format) {
  if (format == ReportFormat::Json) return jumpReportJson(jumps).dump(2) + "\n";
  std::string out;
  appendJumps(out, jumps);
  return out;
}

}  // namespace jumpcoach
