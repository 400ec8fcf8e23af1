#pragma once

// JSON encodings of engine results. Every integer is written as a decimal
// string because orders routinely exceed 64 bits.

#include <string>
#include <vector>

#include <json.hpp>

#include "gw/abelian.hpp"
#include "gw/cyclic_counts.hpp"
#include "gw/error.hpp"
#include "gw/henselian.hpp"
#include "gw/lemma_suite.hpp"

namespace gw::cli {

using Json = nlohmann::ordered_json;

inline Json integer(BigInt const &x) { return to_string(x); }

template <class Int>
Json integer_list(std::vector<Int> const &xs)
{
  Json out = Json::array();
  for (auto const &x : xs) {
    if constexpr (std::is_same_v<Int, BigInt>)
      out.push_back(to_string(x));
    else
      out.push_back(std::to_string(x));
  }
  return out;
}

inline Json to_json(AbelianInvariants const &inv) { return integer_list(inv.factors); }

inline Json to_json(CountReport const &r)
{
  Json j;
  j["n"] = std::to_string(r.n);
  if (r.m)
    j["m"] = std::to_string(*r.m);
  j["value"] = integer(r.value);
  j["mode"] = to_string(r.mode);
  if (r.witness)
    j["witness"] = *r.witness;
  if (r.witness_index)
    j["witness_index"] = integer(*r.witness_index);
  return j;
}

inline Json to_json(CheckReport const &r)
{
  Json j;
  j["check_id"] = r.check_id;
  Json params = Json::object();
  for (auto const &[k, v] : r.parameters)
    params[k] = v;
  j["parameters"] = std::move(params);
  Json asserts = Json::array();
  for (auto const &a : r.assertions)
    asserts.push_back({{"description", a.description},
                       {"expected", a.expected},
                       {"actual", a.actual},
                       {"pass", a.pass}});
  j["assertions"] = std::move(asserts);
  j["elapsed_us"] = std::to_string(r.elapsed_us);
  j["overall"] = r.overall() ? "pass" : "fail";
  return j;
}

inline Json to_json(StageWitness const &w)
{
  return {{"stage", std::to_string(w.stage)},
          {"rank", std::to_string(w.rank)},
          {"index", integer(w.index)},
          {"count", integer(w.count)},
          {"bound", integer(w.bound)}};
}

inline Json series_coefficients(LaurentSeries const &s)
{
  Json out = Json::array();
  for (auto const &c : s.coefficients())
    out.push_back(to_string(c));
  return out;
}

inline Json to_json(PowerClassRep const &rep)
{
  return {{"i", std::to_string(rep.i)},
          {"b", to_string(rep.b)},
          {"normalizer_exponent", std::to_string(rep.certificate.normalizer_exponent)},
          {"root", rep.certificate.root.to_string()},
          {"precision", std::to_string(rep.certificate.precision)},
          {"verified", rep.certificate.verified}};
}

/// Structured error object for any failure that prevents a report.
inline Json error_json(std::exception const &err)
{
  Json j;
  if (auto const *g = dynamic_cast<GuardError const *>(&err)) {
    j["type"] = "guard";
    j["guard"] = g->guard();
  } else if (auto const *p = dynamic_cast<ParseError const *>(&err)) {
    j["type"] = "parse";
    j["line"] = std::to_string(p->line());
    j["column"] = std::to_string(p->column());
    j["expected"] = p->expected();
  } else if (dynamic_cast<DomainError const *>(&err) != nullptr) {
    j["type"] = "domain";
  } else if (dynamic_cast<Error const *>(&err) != nullptr) {
    j["type"] = "error";
  } else {
    j["type"] = "internal";
  }
  j["message"] = err.what();
  return j;
}

} // namespace gw::cli
