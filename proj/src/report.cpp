#include "spinwork/report.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace spinwork {

using ojson = nlohmann::ordered_json;

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::NotApplicable: return "not-applicable";
    case Verdict::PaperDiscrepancy: return "paper-discrepancy";
  }
  return "unknown";
}

int Report::count(Verdict v) const {
  int n = 0;
  for (const CheckRecord& c : checks) n += (c.verdict == v) ? 1 : 0;
  return n;
}

bool Report::ok() const { return count(Verdict::Fail) == 0; }

std::vector<std::string> suite_names() {
  return {"clifford", "curvature",      "sasakian", "wk",
          "einstein-dirac", "products", "table-3d", "all"};
}

namespace {

ojson config_json(const SuiteConfig& c) {
  ojson j;
  j["suite"] = c.suite;
  j["model"] = c.model;
  j["tol"] = c.tol;
  j["fd_step"] = c.fd_step;
  j["samples"] = c.samples;
  j["seed"] = c.seed;
  j["out"] = c.out;
  j["format"] = c.format;
  ojson params = ojson::object();
  for (const auto& [key, value] : c.params) params[key] = value;  // map: sorted
  j["params"] = params;
  return j;
}

ojson summary_json(const Report& r) {
  ojson s;
  s["pass"] = r.count(Verdict::Pass);
  s["fail"] = r.count(Verdict::Fail);
  s["not-applicable"] = r.count(Verdict::NotApplicable);
  s["paper-discrepancy"] = r.count(Verdict::PaperDiscrepancy);
  s["total"] = static_cast<int>(r.checks.size());
  return s;
}

}  // namespace

std::string to_json(const Report& report) {
  ojson j;
  j["version"] = report.version;
  j["config"] = config_json(report.config);
  ojson checks = ojson::array();
  for (const CheckRecord& c : report.checks) {
    ojson jc;
    jc["id"] = c.id;
    jc["claim"] = c.claim;
    ojson inputs = ojson::object();
    for (const auto& [key, value] : c.inputs) inputs[key] = value;
    jc["inputs"] = inputs;
    ojson values = ojson::object();
    for (const auto& [key, value] : c.values) values[key] = value;
    jc["values"] = values;
    jc["verdict"] = verdict_name(c.verdict);
    jc["notes"] = c.notes;
    checks.push_back(std::move(jc));
  }
  j["checks"] = std::move(checks);
  j["summary"] = summary_json(report);
  return j.dump(2) + "\n";
}

std::string to_text_table(const Report& report) {
  std::size_t width = 5;
  for (const CheckRecord& c : report.checks) width = std::max(width, c.id.size());
  auto pad = [width](const std::string& s) {
    return s + std::string(width - std::min(width, s.size()), ' ');
  };

  std::ostringstream os;
  os << "spinor workbench " << report.version << "\n";
  os << "suite: " << report.config.suite;
  if (!report.config.model.empty()) os << "   model: " << report.config.model;
  os << "   seed: " << report.config.seed
     << "   samples: " << report.config.samples << "\n";
  const std::string rule(width + 22, '-');
  os << rule << "\n" << pad("check") << " | verdict\n" << rule << "\n";
  for (const CheckRecord& c : report.checks) {
    os << pad(c.id) << " | ";
    // failures and discrepancies stand out from the pass column
    if (c.verdict == Verdict::PaperDiscrepancy)
      os << "** paper-discrepancy **";
    else if (c.verdict == Verdict::Fail)
      os << "** fail **";
    else
      os << verdict_name(c.verdict);
    os << "\n";
    if (!c.notes.empty() && c.verdict != Verdict::Pass)
      os << std::string(width + 3, ' ') << c.notes << "\n";
  }
  os << rule << "\n";
  os << "summary: pass " << report.count(Verdict::Pass)
     << "   fail " << report.count(Verdict::Fail)
     << "   not-applicable " << report.count(Verdict::NotApplicable)
     << "   paper-discrepancy " << report.count(Verdict::PaperDiscrepancy)
     << "   total " << report.checks.size() << "\n";
  return os.str();
}

SuiteConfig config_from_json(const std::string& text) {
  ojson j;
  try {
    j = ojson::parse(text);
  } catch (const std::exception& e) {
    throw std::invalid_argument(std::string("config: ") + e.what());
  }
  if (!j.is_object()) throw std::invalid_argument("config: expected a JSON object");

  SuiteConfig c;
  for (const auto& [key, value] : j.items()) {
    try {
      if (key == "suite") {
        c.suite = value.get<std::string>();
      } else if (key == "model") {
        c.model = value.get<std::string>();
      } else if (key == "tol") {
        c.tol = value.get<double>();
      } else if (key == "fd_step") {
        c.fd_step = value.get<double>();
      } else if (key == "samples") {
        c.samples = value.get<int>();
      } else if (key == "seed") {
        c.seed = value.get<std::uint64_t>();
      } else if (key == "out") {
        c.out = value.get<std::string>();
      } else if (key == "format") {
        c.format = value.get<std::string>();
      } else if (key == "params") {
        if (!value.is_object())
          throw std::invalid_argument("config: params must be an object of numbers");
        for (const auto& [pk, pv] : value.items()) c.params[pk] = pv.get<double>();
      } else {
        throw std::invalid_argument("config: unknown key: " + key);
      }
    } catch (const ojson::exception& e) {
      throw std::invalid_argument("config: bad value for '" + key + "': " + e.what());
    }
  }
  return c;
}

}  // namespace spinwork
