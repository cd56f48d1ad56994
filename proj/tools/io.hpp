#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "json.hpp"
#include "wed/core.hpp"

namespace wed::io {

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void dump(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  out << text;
}

inline SymbolString parse_string(const std::string& text, bool raw) {
  SymbolString s;
  if (raw) {
    for (char c : text) s.push_back(static_cast<Sym>(static_cast<unsigned char>(c)));
    return s;
  }
  std::istringstream in(text);
  std::string tok;
  while (in >> tok) {
    std::size_t used = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != tok.size() || tok[0] == '-' || v > 0xffffffffUL)
      throw InputError("bad symbol id '" + tok + "'");
    s.push_back(static_cast<Sym>(v));
  }
  return s;
}

inline std::string format_string(const SymbolString& s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(s[i]);
  }
  out += '\n';
  return out;
}

inline SymbolString read_string(const std::string& path, bool raw = false) { return parse_string(slurp(path), raw); }

inline Cost cost_from_json(const nlohmann::json& v) {
  if (!v.is_number_integer()) throw InputError("weight entries must be integers");
  const auto c = v.get<std::int64_t>();
  if (c == -1) return kInf;
  if (c < 0) throw InputError("negative weight " + std::to_string(c));
  if (c >= kInf) throw InputError("weight too large");
  return c;
}

inline nlohmann::json cost_to_json(Cost c) { return is_inf(c) ? nlohmann::json(-1) : nlohmann::json(c); }

inline WeightFn parse_weights(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("weights: ") + e.what());
  }
  try {
    const auto A = j.at("alphabet_size").get<std::int64_t>();
    const auto den = j.at("denominator").get<std::int64_t>();
    if (A < 0 || den <= 0) throw InputError("weights: bad alphabet_size or denominator");
    const auto& sub = j.at("sub");
    const auto& ins = j.at("ins");
    const auto& del = j.at("del");
    if (!sub.is_array() || static_cast<std::int64_t>(sub.size()) != A || !ins.is_array() ||
        static_cast<std::int64_t>(ins.size()) != A || !del.is_array() || static_cast<std::int64_t>(del.size()) != A)
      throw InputError("weights: sub, ins and del must have alphabet_size entries");
    WeightFn w(A, den);
    for (std::int64_t a = 0; a < A; ++a) {
      if (!sub[a].is_array() || static_cast<std::int64_t>(sub[a].size()) != A)
        throw InputError("weights: sub row " + std::to_string(a) + " has the wrong length");
      for (std::int64_t b = 0; b < A; ++b) w.set(a, b, cost_from_json(sub[a][b]));
      w.set(A, a, cost_from_json(ins[a]));
      w.set(a, A, cost_from_json(del[a]));
    }
    return w;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("weights: ") + e.what());
  }
}

inline WeightFn read_weights(const std::string& path) { return parse_weights(slurp(path)); }

inline nlohmann::json weights_json(const WeightFn& w) {
  const std::size_t A = w.alphabet_size();
  nlohmann::json sub = nlohmann::json::array(), ins = nlohmann::json::array(), del = nlohmann::json::array();
  for (std::size_t a = 0; a < A; ++a) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t b = 0; b < A; ++b) row.push_back(cost_to_json(w(a, b)));
    sub.push_back(row);
    ins.push_back(cost_to_json(w(A, a)));
    del.push_back(cost_to_json(w(a, A)));
  }
  return {{"alphabet_size", A}, {"denominator", w.denominator()}, {"sub", sub}, {"ins", ins}, {"del", del}};
}

inline void check_symbols(const SymbolString& s, const WeightFn& w, const char* what) {
  for (Sym c : s)
    if (c >= w.alphabet_size())
      throw InputError(std::string(what) + ": symbol " + std::to_string(c) + " outside the alphabet");
}

}  // namespace wed::io
