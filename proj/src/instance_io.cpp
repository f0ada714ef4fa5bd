#include "sumsetlab/instance_io.hpp"

#include <fstream>
#include <sstream>

#include "sumsetlab/error.hpp"

namespace sumsetlab {

using nlohmann::json;

namespace {

Residues residues_from(const json& list, const std::string& what) {
  if (!list.is_array()) {
    throw Error(Errc::invalid_instance, what + " must be a list of integers");
  }
  Residues out;
  for (const auto& v : list) {
    if (!v.is_number_integer() || v.get<std::int64_t>() < 0) {
      throw Error(Errc::invalid_instance,
                  what + " holds " + v.dump() + ", not a nonnegative integer");
    }
    out.push_back(v.get<std::uint64_t>());
  }
  return out;
}

std::pair<std::size_t, std::size_t> parse_pair_key(const std::string& key,
                                                   std::size_t n) {
  const auto comma = key.find(',');
  auto bad = [&] {
    return Error(Errc::invalid_instance, "forbidden key \"" + key +
                                             "\" is not \"i,j\" with 1 <= i != j <= " +
                                             std::to_string(n));
  };
  if (comma == std::string::npos) throw bad();
  std::size_t i = 0, j = 0;
  try {
    std::size_t used = 0;
    const auto left = key.substr(0, comma);
    const auto right = key.substr(comma + 1);
    i = std::stoul(left, &used);
    if (used != left.size()) throw bad();
    j = std::stoul(right, &used);
    if (used != right.size()) throw bad();
  } catch (const std::logic_error&) {
    throw bad();
  }
  if (i < 1 || j < 1 || i > n || j > n || i == j) throw bad();
  return {i - 1, j - 1};
}

}  // namespace

SumsetInstance instance_from_json(const json& doc) {
  if (!doc.is_object()) {
    throw Error(Errc::invalid_instance, "instance must be a JSON object");
  }
  if (!doc.contains("p") || !doc["p"].is_number_integer() ||
      doc["p"].get<std::int64_t>() < 2) {
    throw Error(Errc::invalid_instance, "field \"p\" must be an integer >= 2");
  }
  const auto field = make_field(doc["p"].get<std::uint64_t>());
  if (!doc.contains("sets") || !doc["sets"].is_array()) {
    throw Error(Errc::invalid_instance, "field \"sets\" must be a list of lists");
  }
  std::vector<Residues> sets;
  for (std::size_t j = 0; j < doc["sets"].size(); ++j) {
    sets.push_back(residues_from(doc["sets"][j], "A_" + std::to_string(j + 1)));
  }
  SumsetInstance::ForbiddenMap forbidden;
  if (doc.contains("forbidden")) {
    const auto& f = doc["forbidden"];
    if (!f.is_object()) {
      throw Error(Errc::invalid_instance, "field \"forbidden\" must be an object");
    }
    for (const auto& [key, value] : f.items()) {
      forbidden[parse_pair_key(key, sets.size())] =
          residues_from(value, "forbidden[" + key + "]");
    }
  }
  return SumsetInstance(field, std::move(sets), forbidden);
}

SumsetInstance parse_instance(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(Errc::invalid_instance, std::string("malformed JSON: ") + e.what());
  }
  return instance_from_json(doc);
}

SumsetInstance load_instance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(Errc::invalid_instance, "cannot read " + path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_instance(buf.str());
}

json instance_to_json(const SumsetInstance& inst) {
  json doc;
  doc["p"] = inst.p();
  doc["sets"] = inst.sets();
  json forbidden = json::object();
  const auto n = inst.n();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j) {
        forbidden[std::to_string(i + 1) + "," + std::to_string(j + 1)] =
            inst.forbidden(i, j);
      }
    }
  }
  doc["forbidden"] = std::move(forbidden);
  return doc;
}

}  // namespace sumsetlab
