#include "lemmaforge/smt/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "lemmaforge/smt/encoder.hpp"

namespace lemmaforge::smt {

bool FunctionResult::proved() const {
  for (auto& v : vcs) {
    if (v.verdict.status != Status::Proved) return false;
  }
  return true;
}

double FunctionResult::time_s() const {
  double t = 0;
  for (auto& v : vcs) t += v.verdict.time_s;
  return t;
}

bool Report::all_proved() const {
  for (auto& f : functions) {
    if (!f.proved()) return false;
  }
  return true;
}

size_t Report::vc_count() const {
  size_t n = 0;
  for (auto& f : functions) n += f.vcs.size();
  return n;
}

Report discharge_all(const TypedUnit& unit, const std::vector<UnitVcs>& vcs, const DischargeOptions& options) {
  std::vector<std::string> scripts;
  for (auto& f : vcs) {
    for (auto& vc : f.vcs) scripts.push_back(encode(unit, vc));
  }
  auto verdicts = discharge(scripts, options);
  Report r;
  size_t i = 0;
  for (auto& f : vcs) {
    FunctionResult fr;
    fr.name = f.name;
    fr.file = unit.unit.file;
    for (auto& vc : f.vcs) fr.vcs.push_back({vc.name, vc.kind, vc.pos, vc.description, verdicts[i++]});
    r.functions.push_back(std::move(fr));
  }
  return r;
}

namespace {

double millis(double t) { return std::round(t * 1000) / 1000; }

std::string fixed(double t) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", t);
  return buf;
}

}  // namespace

std::string render_text(const Report& report) {
  size_t width = 8;
  for (auto& f : report.functions) width = std::max(width, f.name.size());
  std::ostringstream out;
  auto row = [&](const std::string& name, const std::string& vcs, const std::string& proved, const std::string& time,
                 const std::string& status) {
    std::string pad(width - std::min(width, name.size()), ' ');
    char buf[128];
    std::snprintf(buf, sizeof buf, "  %5s  %6s  %8s  %s", vcs.c_str(), proved.c_str(), time.c_str(), status.c_str());
    out << name << pad << buf << "\n";
  };
  row("function", "vcs", "proved", "time_s", "status");
  size_t total = 0, total_proved = 0;
  double total_time = 0;
  for (auto& f : report.functions) {
    size_t proved = 0;
    for (auto& v : f.vcs) proved += v.verdict.status == Status::Proved;
    total += f.vcs.size();
    total_proved += proved;
    total_time += f.time_s();
    row(f.name, std::to_string(f.vcs.size()), std::to_string(proved), fixed(f.time_s()),
        f.proved() ? "Proved" : "Failed");
  }
  row("total", std::to_string(total), std::to_string(total_proved), fixed(total_time),
      report.all_proved() ? "Proved" : "Failed");
  for (auto& f : report.functions) {
    for (auto& v : f.vcs) {
      if (v.verdict.status == Status::Proved) continue;
      out << "  " << v.name << ": " << to_string(v.verdict.status) << " at " << v.pos.str() << " (" << v.description
          << ")\n";
      if (!v.verdict.detail.empty()) out << "    " << v.verdict.detail << "\n";
    }
  }
  return out.str();
}

std::string render_json(const Report& report) {
  nlohmann::ordered_json j;
  j["functions"] = nlohmann::ordered_json::array();
  for (auto& f : report.functions) {
    nlohmann::ordered_json jf;
    jf["name"] = f.name;
    jf["file"] = f.file;
    jf["status"] = f.proved() ? "Proved" : "Failed";
    jf["time_s"] = millis(f.time_s());
    jf["vcs"] = nlohmann::ordered_json::array();
    for (auto& v : f.vcs) {
      nlohmann::ordered_json jv;
      jv["name"] = v.name;
      jv["kind"] = ir::to_string(v.kind);
      jv["status"] = to_string(v.verdict.status);
      jv["time_s"] = millis(v.verdict.time_s);
      if (v.verdict.status == Status::Refuted) jv["model"] = v.verdict.model;
      jf["vcs"].push_back(jv);
    }
    j["functions"].push_back(jf);
  }
  j["proved"] = report.all_proved();
  return j.dump(2) + "\n";
}

}  // namespace lemmaforge::smt
