#include "report.hpp"

#include <sstream>

namespace orthcheck {

json replay_orth(const std::string& relation, json a, json c, bool expected) {
  return {{"check", "orth"}, {"relation", relation}, {"sets", json::array({std::move(a), std::move(c)})},
          {"expected", expected}};
}

json replay_bounded(const std::string& relation, json b, bool expected) {
  return {{"check", "bounded"}, {"relation", relation}, {"sets", json::array({std::move(b)})},
          {"expected", expected}};
}

std::string to_string(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::error: return "error";
    case Status::budget: return "budget";
  }
  return "?";
}

Status Report::status() const {
  if (forced) return *forced;
  for (const auto& v : verdicts)
    if (!v.informational && !v.holds) return Status::fail;
  return Status::pass;
}

int Report::exit_code() const {
  switch (status()) {
    case Status::pass: return 0;
    case Status::fail: return 1;
    case Status::error: return 2;
    case Status::budget: return 3;
  }
  return 2;
}

json Report::to_json() const {
  json out;
  out["command"] = command;
  out["model"] = model;
  out["status"] = to_string(status());
  out["summary"] = summary;
  out["facts"] = facts;
  json vs = json::array();
  for (const auto& v : verdicts) {
    json j;
    j["name"] = v.name;
    j["holds"] = v.holds;
    j["informational"] = v.informational;
    j["detail"] = v.detail;
    j["witness"] = v.witness;
    j["replay"] = v.replay;
    vs.push_back(std::move(j));
  }
  out["verdicts"] = std::move(vs);
  out["notes"] = notes;
  if (!error.is_null()) out["error"] = error;
  return out;
}

namespace {

std::string inline_json(const json& j) {
  if (j.is_array() && !j.empty() && j[0].is_string()) {
    std::string s = "{";
    for (std::size_t i = 0; i < j.size(); ++i) s += (i ? "," : "") + j[i].get<std::string>();
    return s + "}";
  }
  if (j.is_array() && j.empty()) return "{}";
  return j.dump();
}

}  // namespace

std::string Report::to_text() const {
  std::ostringstream out;
  for (const auto& line : summary) out << line << "\n";
  for (const auto& v : verdicts) {
    out << (v.informational ? (v.holds ? "  [yes] " : "  [no]  ") : (v.holds ? "  [ok]   " : "  [FAIL] "))
        << v.name;
    if (!v.detail.empty()) out << ": " << v.detail;
    out << "\n";
    if (!v.witness.empty()) {
      out << "         witness:";
      for (const auto& w : v.witness) out << " " << inline_json(w);
      out << "\n";
    }
  }
  for (const auto& n : notes) out << "note: " << n << "\n";
  if (!error.is_null()) out << "error: " << error.value("message", std::string()) << "\n";
  out << "status: " << to_string(status()) << "\n";
  return out.str();
}

}  // namespace orthcheck
