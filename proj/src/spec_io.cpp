#include "isac/spec_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace isac {

namespace {

using json = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw SpecError("channel spec: " + path + ": " + what);
}

const json& member(const json& obj, const std::string& path, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) fail(path, std::string("missing key '") + key + "'");
  return *it;
}

void check_keys(const json& obj, const std::string& path,
                std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) fail(path, "expected an object");
  for (const auto& [key, _] : obj.items()) {
    bool ok = false;
    for (const char* a : allowed)
      if (key == a) { ok = true; break; }
    if (!ok) fail(path, "unknown key '" + key + "'");
  }
}

std::vector<std::string> string_array(const json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) fail(path, "expected a nonempty array of strings");
  std::vector<std::string> out;
  for (const auto& v : j) {
    if (!v.is_string()) fail(path, "expected a nonempty array of strings");
    out.push_back(v.get<std::string>());
  }
  return out;
}

std::vector<double> number_array(const json& j, const std::string& path, std::size_t expect) {
  if (!j.is_array()) fail(path, "expected an array of numbers");
  if (j.size() != expect)
    fail(path, "expected " + std::to_string(expect) + " numbers, found " +
                   std::to_string(j.size()));
  std::vector<double> out;
  for (const auto& v : j) {
    if (!v.is_number()) fail(path, "expected an array of numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

// Document-level pmf validation is looser (1e-9) than the in-memory tables;
// rows are renormalized here so construction sees clean mass.
void normalize_document_pmf(std::vector<double>& pmf, const std::string& path) {
  double sum = 0.0;
  for (double v : pmf) {
    if (!std::isfinite(v) || v < 0.0) fail(path, "probabilities must be finite and >= 0");
    sum += v;
  }
  if (std::abs(sum - 1.0) > 1e-9)
    fail(path, "probabilities sum to " + std::to_string(sum) + ", not 1 within 1e-9");
  for (double& v : pmf) v /= sum;
}

void check_fixed_names(const json& j, const std::string& path,
                       std::initializer_list<const char*> names) {
  auto arr = string_array(j, path);
  std::size_t i = 0;
  for (const char* n : names) {
    if (i >= arr.size() || arr[i] != n) {
      std::string want;
      for (const char* m : names) want += std::string(want.empty() ? "" : ", ") + m;
      fail(path, "must be exactly [" + want + "]");
    }
    ++i;
  }
  if (i != arr.size()) fail(path, "has extra entries");
}

DistortionMetric parse_metric(const json& j, const std::string& path, const Alphabet& state) {
  check_keys(j, path, {"reconstruction", "table"});
  Alphabet recon(state.name() + "_hat",
                 string_array(member(j, path, "reconstruction"), path + ".reconstruction"));
  const json& rows = member(j, path, "table");
  if (!rows.is_array() || rows.size() != state.size())
    fail(path + ".table", "expected one row per state symbol");
  std::vector<double> table;
  for (std::size_t s = 0; s < rows.size(); ++s) {
    auto row = number_array(rows[s], path + ".table[" + std::to_string(s) + "]", recon.size());
    for (double v : row) {
      if (!std::isfinite(v) || v < 0.0)
        fail(path + ".table", "distortions must be finite and >= 0");
      table.push_back(v);
    }
  }
  return DistortionMetric(state, std::move(recon), std::move(table));
}

}  // namespace

ChannelSpec parse_channel_spec(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw SpecError(std::string("channel spec: ") + e.what());
  }
  check_keys(doc, "$", {"alphabets", "state_prior", "kernel", "distortions"});

  const json& al = member(doc, "$", "alphabets");
  check_keys(al, "alphabets", {"X", "Y1", "Y2", "S1", "S2"});
  auto get_alphabet = [&](const char* name) {
    return Alphabet(name, string_array(member(al, "alphabets", name),
                                       std::string("alphabets.") + name));
  };
  Alphabet x = get_alphabet("X"), y1 = get_alphabet("Y1"), y2 = get_alphabet("Y2"),
           s1 = get_alphabet("S1"), s2 = get_alphabet("S2");

  const json& pr = member(doc, "$", "state_prior");
  check_keys(pr, "state_prior", {"axes", "mass"});
  check_fixed_names(member(pr, "state_prior", "axes"), "state_prior.axes", {"S1", "S2"});
  auto prior_mass = number_array(member(pr, "state_prior", "mass"), "state_prior.mass",
                                 s1.size() * s2.size());
  normalize_document_pmf(prior_mass, "state_prior.mass");

  const json& ke = member(doc, "$", "kernel");
  check_keys(ke, "kernel", {"from", "to", "rows"});
  check_fixed_names(member(ke, "kernel", "from"), "kernel.from", {"S1", "S2", "X"});
  check_fixed_names(member(ke, "kernel", "to"), "kernel.to", {"Y1", "Y2"});
  const json& rows = member(ke, "kernel", "rows");
  if (!rows.is_array()) fail("kernel.rows", "expected an array of row objects");
  std::size_t from_cells = s1.size() * s2.size() * x.size();
  std::size_t to_cells = y1.size() * y2.size();
  std::vector<double> table(from_cells * to_cells, 0.0);
  std::vector<bool> seen(from_cells, false);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    std::string path = "kernel.rows[" + std::to_string(r) + "]";
    const json& row = rows[r];
    check_keys(row, path, {"given", "pmf"});
    auto given = string_array(member(row, path, "given"), path + ".given");
    if (given.size() != 3) fail(path + ".given", "expected the (S1, S2, X) symbol triple");
    auto i1 = s1.index_of(given[0]);
    auto i2 = s2.index_of(given[1]);
    auto ix = x.index_of(given[2]);
    if (!i1) fail(path + ".given", "'" + given[0] + "' is not an S1 symbol");
    if (!i2) fail(path + ".given", "'" + given[1] + "' is not an S2 symbol");
    if (!ix) fail(path + ".given", "'" + given[2] + "' is not an X symbol");
    std::size_t from = (*i1 * s2.size() + *i2) * x.size() + *ix;
    if (seen[from]) fail(path, "duplicate row for this conditioning tuple");
    seen[from] = true;
    auto pmf = number_array(member(row, path, "pmf"), path + ".pmf", to_cells);
    normalize_document_pmf(pmf, path + ".pmf");
    std::copy(pmf.begin(), pmf.end(), table.begin() + from * to_cells);
  }
  for (std::size_t f = 0; f < from_cells; ++f)
    if (!seen[f]) fail("kernel.rows", "missing a row for some conditioning tuple");

  IsacChannel channel(x, y1, y2, s1, s2, LabeledJoint({s1, s2}, std::move(prior_mass)),
                      Kernel({s1, s2, x}, {y1, y2}, std::move(table)));

  std::optional<DistortionPair> metrics;
  if (auto it = doc.find("distortions"); it != doc.end()) {
    check_keys(*it, "distortions", {"d1", "d2"});
    metrics = DistortionPair{
        parse_metric(member(*it, "distortions", "d1"), "distortions.d1", s1),
        parse_metric(member(*it, "distortions", "d2"), "distortions.d2", s2)};
  }
  return ChannelSpec{std::move(channel), std::move(metrics)};
}

ChannelSpec load_channel_spec(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SpecError("channel spec: cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_channel_spec(buf.str());
}

std::string serialize_channel_spec(const IsacChannel& ch, const DistortionPair* metrics) {
  json doc;
  doc["alphabets"] = {{"X", ch.x.symbols()},   {"Y1", ch.y1.symbols()},
                      {"Y2", ch.y2.symbols()}, {"S1", ch.s1.symbols()},
                      {"S2", ch.s2.symbols()}};
  doc["state_prior"] = {{"axes", {"S1", "S2"}}, {"mass", ch.state_prior.mass()}};

  json rows = json::array();
  std::size_t to_cells = ch.y1.size() * ch.y2.size();
  for (std::size_t i1 = 0; i1 < ch.s1.size(); ++i1)
    for (std::size_t i2 = 0; i2 < ch.s2.size(); ++i2)
      for (std::size_t ix = 0; ix < ch.x.size(); ++ix) {
        std::size_t from = (i1 * ch.s2.size() + i2) * ch.x.size() + ix;
        json pmf = json::array();
        for (std::size_t t = 0; t < to_cells; ++t) pmf.push_back(ch.kernel.prob(from, t));
        rows.push_back(
            {{"given", {ch.s1.symbol(i1), ch.s2.symbol(i2), ch.x.symbol(ix)}}, {"pmf", pmf}});
      }
  doc["kernel"] = {{"from", {"S1", "S2", "X"}}, {"to", {"Y1", "Y2"}}, {"rows", rows}};

  if (metrics) {
    auto metric_json = [](const DistortionMetric& m) {
      json rows_ = json::array();
      for (std::size_t s = 0; s < m.state_alphabet.size(); ++s) {
        json row = json::array();
        for (std::size_t r = 0; r < m.reconstruction_alphabet.size(); ++r)
          row.push_back(m.at(s, r));
        rows_.push_back(row);
      }
      return json{{"reconstruction", m.reconstruction_alphabet.symbols()}, {"table", rows_}};
    };
    doc["distortions"] = {{"d1", metric_json(metrics->d1)}, {"d2", metric_json(metrics->d2)}};
  }
  return doc.dump(2) + "\n";
}

}  // namespace isac
