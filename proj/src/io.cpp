#include "taskcode/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace taskcode {

Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument("malformed JSON in '" + path + "': " + e.what());
  }
}

namespace {

template <class T>
T field(const Json& j, const char* key, const char* what) {
  if (!j.is_object() || !j.contains(key)) {
    throw InvalidArgument(std::string(what) + ": missing \"" + key + "\"");
  }
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw InvalidArgument(std::string(what) + ": field \"" + key + "\" has the wrong type");
  }
}

Alphabet alphabet_field(const Json& j, const char* key, const char* what) {
  return Alphabet(field<std::vector<std::string>>(j, key, what));
}

void check_total(double total, bool normalize, const char* what) {
  if (!normalize && std::abs(total - 1.0) > 1e-9) {
    std::ostringstream os;
    os.precision(12);
    os << what << ": probabilities sum to " << total << ", not 1 (pass --normalize to rescale)";
    throw InvalidArgument(os.str());
  }
}

}  // namespace

Pmf pmf_from_json(const Json& j, bool normalize) {
  auto alphabet = alphabet_field(j, "alphabet", "pmf");
  const auto probs = field<std::vector<double>>(j, "probs", "pmf");
  double total = 0.0;
  for (double v : probs) total += v;
  if (probs.size() == alphabet.size()) check_total(total, normalize, "pmf");
  return make_pmf(alphabet, probs);
}

Json to_json(const Pmf& p) {
  Json j;
  Json labels = Json::array();
  for (std::size_t i = 0; i < p.size(); ++i) labels.push_back(p.alphabet().label(i));
  j["alphabet"] = labels;
  j["probs"] = std::vector<double>(p.probs().begin(), p.probs().end());
  return j;
}

JointPmf joint_from_json(const Json& j, bool normalize) {
  auto xa = alphabet_field(j, "x_alphabet", "joint");
  auto ya = alphabet_field(j, "y_alphabet", "joint");
  auto rows = field<std::vector<std::vector<double>>>(j, "probs", "joint");
  if (rows.size() != xa.size()) throw InvalidArgument("joint: need one row per x symbol");
  double total = 0.0;
  for (const auto& r : rows) {
    if (r.size() != ya.size()) throw InvalidArgument("joint: need one column per y symbol");
    for (double v : r) {
      if (!(v >= 0.0) || !std::isfinite(v)) throw InvalidArgument("joint: probabilities must be finite and nonnegative");
      total += v;
    }
  }
  check_total(total, normalize, "joint");
  if (!(total > 0.0)) throw InvalidArgument("joint: all probabilities are zero");
  for (auto& r : rows) {
    for (double& v : r) v /= total;
  }
  return JointPmf(std::move(xa), std::move(ya), std::move(rows), 1e-9);
}

Json to_json(const JointPmf& jp) {
  Json j;
  Json xs = Json::array(), ys = Json::array();
  for (std::size_t i = 0; i < jp.x_size(); ++i) xs.push_back(jp.x_alphabet().label(i));
  for (std::size_t i = 0; i < jp.y_size(); ++i) ys.push_back(jp.y_alphabet().label(i));
  j["x_alphabet"] = xs;
  j["y_alphabet"] = ys;
  j["probs"] = jp.rows();
  return j;
}

CostFn cost_from_json(const Json& j) {
  return CostFn(alphabet_field(j, "alphabet", "cost"), field<std::vector<double>>(j, "costs", "cost"));
}

Json to_json(const TaskEncoder& enc) {
  Json j;
  j["M"] = enc.descriptions();
  Json assign = Json::object();
  for (std::size_t x = 0; x < enc.alphabet().size(); ++x) assign[enc.alphabet().label(x)] = enc(x) + 1;
  j["assign"] = assign;
  return j;
}

TaskEncoder encoder_from_json(const Json& j, const Alphabet& alphabet) {
  const auto m = field<std::size_t>(j, "M", "encoder");
  const auto assign = field<std::map<std::string, std::size_t>>(j, "assign", "encoder");
  if (assign.size() != alphabet.size()) throw InvalidArgument("encoder: \"assign\" must list every symbol once");
  std::vector<std::size_t> a(alphabet.size());
  for (const auto& [label, idx] : assign) {
    const auto x = alphabet.index_of(label);
    if (!x) throw InvalidArgument("encoder: unknown symbol '" + label + "'");
    if (idx < 1 || idx > m) throw InvalidArgument("encoder: description for '" + label + "' outside 1..M");
    a[*x] = idx - 1;
  }
  return TaskEncoder(alphabet, m, std::move(a));
}

Json to_json(const Partition& part) {
  Json blocks = Json::array();
  for (const auto& b : part.blocks()) {
    Json block = Json::array();
    for (auto x : b) block.push_back(part.alphabet().label(x));
    blocks.push_back(block);
  }
  Json j;
  j["blocks"] = blocks;
  return j;
}

}  // namespace taskcode
