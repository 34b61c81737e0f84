#include "cfw/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace cfw {

namespace {

std::string shortest(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

bool parse_double(std::string_view s, double& out) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  if (s.empty()) return false;
  auto res = std::from_chars(s.data(), s.data() + s.size(), out);
  return res.ec == std::errc() && res.ptr == s.data() + s.size();
}

const json& at(const json& j, const char* key, const std::string& where) {
  if (!j.is_object()) throw schema_error(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end())
    throw schema_error(where, std::string("missing key '") + key + "'");
  return *it;
}

std::string child(const std::string& where, const std::string& key) {
  return where + "/" + key;
}

std::string child(const std::string& where, std::size_t i) {
  return where + "/" + std::to_string(i);
}

const json& expect_array(const json& j, const std::string& where) {
  if (!j.is_array()) throw schema_error(where, "expected an array");
  return j;
}

double real_from_json(const json& j, const std::string& where) {
  if (!j.is_number()) throw schema_error(where, "expected a number");
  return j.get<double>();
}

std::vector<double> reals_from_json(const json& j, const std::string& where) {
  expect_array(j, where);
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i)
    out.push_back(real_from_json(j[i], child(where, i)));
  return out;
}

MeasureSpace space_from_json(const json& j, const std::string& where) {
  std::vector<std::string> labels;
  if (j.contains("labels")) {
    const auto& l = expect_array(j["labels"], child(where, "labels"));
    for (std::size_t i = 0; i < l.size(); ++i) {
      if (!l[i].is_string())
        throw schema_error(child(child(where, "labels"), i), "expected a string");
      labels.push_back(l[i].get<std::string>());
    }
  }
  try {
    return MeasureSpace(reals_from_json(at(j, "weights", where),
                                        child(where, "weights")),
                        std::move(labels));
  } catch (const InputError& e) {
    throw schema_error(where, e.what());
  }
}

json space_to_json(const MeasureSpace& s) {
  json j;
  j["weights"] = std::vector<double>(s.weights().begin(), s.weights().end());
  if (!s.labels().empty()) j["labels"] = s.labels();
  return j;
}

Subspace subspace_from_json(const json& j, Index d, double rank_tol,
                            const std::string& where) {
  const Operator M = matrix_from_json(j, d, where);
  // Keep an orthonormal basis bit for bit; anything else is a spanning set.
  if (M.cols() <= d) {
    const Operator gram = M.adjoint() * M;
    if (M.cols() == 0 ||
        (gram - Operator::Identity(M.cols(), M.cols())).cwiseAbs().maxCoeff() <=
            1e-12)
      return Subspace::from_orthonormal(M, 1e-12);
  }
  return column_span(M, rank_tol);
}

CFrame cframe_from_json(const json& j, Index d, const std::string& where) {
  const MeasureSpace space =
      space_from_json(at(j, "space", where), child(where, "space"));
  const auto& vs = expect_array(at(j, "vectors", where), child(where, "vectors"));
  std::vector<Vector> vecs;
  for (std::size_t i = 0; i < vs.size(); ++i)
    vecs.push_back(vector_from_json(vs[i], d, child(child(where, "vectors"), i)));
  try {
    return CFrame(space, std::move(vecs));
  } catch (const InputError& e) {
    throw schema_error(where, e.what());
  }
}

json cframe_to_json(const CFrame& f) {
  json j;
  j["space"] = space_to_json(f.space());
  json vs = json::array();
  for (const auto& v : f.vectors()) vs.push_back(vector_to_json(v));
  j["vectors"] = std::move(vs);
  return j;
}

json fusion_member_to_json(const CFusionFrame& f) {
  json j;
  j["weights"] = f.weights();
  json subs = json::array();
  for (const auto& s : f.subspaces()) subs.push_back(matrix_to_json(s.basis()));
  j["subspaces"] = std::move(subs);
  return j;
}

}  // namespace

InputError schema_error(const std::string& where, const std::string& what) {
  return InputError("at " + (where.empty() ? std::string("/") : where) + ": " +
                    what);
}

std::string format_complex(Scalar z) {
  const double re = z.real() + 0.0;
  const double im = z.imag() + 0.0;
  const bool neg = std::signbit(im);
  return shortest(re) + (neg ? "-" : "+") + shortest(std::abs(im)) + "j";
}

Scalar parse_complex(const json& j, const std::string& where) {
  if (j.is_number()) return Scalar(j.get<double>(), 0.0);
  if (!j.is_string())
    throw schema_error(where, "expected a number or a complex literal");
  std::string s = j.get<std::string>();
  std::erase_if(s, [](char c) { return c == ' '; });
  auto bad = [&] {
    return schema_error(where, "malformed complex literal '" + s + "'");
  };
  if (s.empty()) throw bad();
  double re = 0.0, im = 0.0;
  if (s.back() != 'j' && s.back() != 'i') {
    if (!parse_double(s, re)) throw bad();
    return {re, 0.0};
  }
  const std::string body = s.substr(0, s.size() - 1);
  std::size_t split = std::string::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' &&
        body[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  std::string re_part = split == std::string::npos ? "" : body.substr(0, split);
  std::string im_part = split == std::string::npos ? body : body.substr(split);
  if (im_part.empty() || im_part == "+") im_part = "1";
  if (im_part == "-") im_part = "-1";
  if (!re_part.empty() && !parse_double(re_part, re)) throw bad();
  if (!parse_double(im_part, im)) throw bad();
  return {re, im};
}

json matrix_to_json(const Operator& M) {
  json rows = json::array();
  for (Index r = 0; r < M.rows(); ++r) {
    json row = json::array();
    for (Index c = 0; c < M.cols(); ++c) row.push_back(format_complex(M(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Operator matrix_from_json(const json& j, Index rows, const std::string& where) {
  expect_array(j, where);
  if (static_cast<Index>(j.size()) != rows)
    throw schema_error(where, "expected " + std::to_string(rows) + " rows, got " +
                                  std::to_string(j.size()));
  Index cols = -1;
  Operator M;
  for (std::size_t r = 0; r < j.size(); ++r) {
    const auto& row = expect_array(j[r], child(where, r));
    if (cols < 0) {
      cols = static_cast<Index>(row.size());
      M.resize(rows, cols);
    } else if (static_cast<Index>(row.size()) != cols) {
      throw schema_error(child(where, r), "ragged matrix row");
    }
    for (std::size_t c = 0; c < row.size(); ++c)
      M(static_cast<Index>(r), static_cast<Index>(c)) =
          parse_complex(row[c], child(child(where, r), c));
  }
  return M;
}

json vector_to_json(const Vector& v) {
  json out = json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(format_complex(v(i)));
  return out;
}

Vector vector_from_json(const json& j, Index dim, const std::string& where) {
  expect_array(j, where);
  if (static_cast<Index>(j.size()) != dim)
    throw schema_error(where, "expected " + std::to_string(dim) + " entries");
  Vector v(dim);
  for (std::size_t i = 0; i < j.size(); ++i)
    v(static_cast<Index>(i)) = parse_complex(j[i], child(where, i));
  return v;
}

json instance_to_json(const Instance& inst) {
  json j;
  j["format"] = "cfw-instance";
  j["version"] = 1;
  j["dimension"] = inst.family.ambient_dim();
  if (inst.lifted) {
    const auto& L = *inst.lifted;
    j["kind"] = "product_lift";
    j["outer"] = space_to_json(L.outer);
    json inner = json::array();
    for (const auto& f : L.inner) inner.push_back(cframe_to_json(f));
    j["inner"] = std::move(inner);
    j["outer_weights"] = L.weights;
  } else {
    j["kind"] = "fusion_family";
    j["space"] = space_to_json(inst.family.space());
    json members = json::array();
    for (const auto& m : inst.family.members())
      members.push_back(fusion_member_to_json(m));
    j["members"] = std::move(members);
  }
  if (!inst.source.is_null()) j["source"] = inst.source;
  return j;
}

Instance instance_from_json(const json& j, double rank_tol) {
  const std::string root;
  if (!j.is_object()) throw schema_error(root, "instance must be an object");
  const json& dj = at(j, "dimension", root);
  if (!dj.is_number_integer() || dj.get<long long>() <= 0)
    throw schema_error("/dimension", "expected a positive integer");
  const Index d = dj.get<Index>();
  if (j.contains("kind") && !j["kind"].is_string())
    throw schema_error("/kind", "expected a string");
  const std::string kind =
      j.contains("kind") ? j["kind"].get<std::string>() : "fusion_family";
  json source = j.contains("source") ? j["source"] : json();

  if (kind == "product_lift") {
    const MeasureSpace outer = space_from_json(at(j, "outer", root), "/outer");
    const auto& inner_j = expect_array(at(j, "inner", root), "/inner");
    std::vector<CFrame> inner;
    for (std::size_t i = 0; i < inner_j.size(); ++i)
      inner.push_back(cframe_from_json(inner_j[i], d, child("/inner", i)));
    const auto& wj = expect_array(at(j, "outer_weights", root), "/outer_weights");
    std::vector<std::vector<double>> weights;
    for (std::size_t i = 0; i < wj.size(); ++i)
      weights.push_back(reals_from_json(wj[i], child("/outer_weights", i)));
    try {
      LiftedProduct lifted = lift_product(inner, outer, weights, rank_tol);
      WovenFamily fam = lifted.fusion;
      return Instance{std::move(fam), std::move(lifted), std::move(source)};
    } catch (const InputError& e) {
      if (std::string(e.what()).rfind("at ", 0) == 0) throw;
      throw schema_error(root, e.what());
    }
  }
  if (kind != "fusion_family")
    throw schema_error("/kind", "unknown instance kind '" + kind + "'");

  const MeasureSpace space = space_from_json(at(j, "space", root), "/space");
  const auto& mj = expect_array(at(j, "members", root), "/members");
  std::vector<CFusionFrame> members;
  for (std::size_t i = 0; i < mj.size(); ++i) {
    const std::string where = child("/members", i);
    if (mj[i].contains("frame")) {
      CFrame f = cframe_from_json(mj[i]["frame"], d, child(where, "frame"));
      try {
        members.push_back(cfusion_from_cframe(f, rank_tol));
      } catch (const InputError& e) {
        throw schema_error(where, e.what());
      }
      continue;
    }
    const auto v = reals_from_json(at(mj[i], "weights", where),
                                   child(where, "weights"));
    const auto& sj = expect_array(at(mj[i], "subspaces", where),
                                  child(where, "subspaces"));
    std::vector<Subspace> subs;
    for (std::size_t k = 0; k < sj.size(); ++k)
      subs.push_back(subspace_from_json(sj[k], d, rank_tol,
                                        child(child(where, "subspaces"), k)));
    try {
      members.emplace_back(space, std::move(subs), v);
    } catch (const InputError& e) {
      throw schema_error(where, e.what());
    }
  }
  try {
    return Instance{WovenFamily(std::move(members)), std::nullopt,
                    std::move(source)};
  } catch (const InputError& e) {
    throw schema_error("/members", e.what());
  }
}

json partition_to_json(const Partition& p) { return p.assignment(); }

json universal_bounds_to_json(const UniversalBounds& b) {
  json j;
  j["lower"] = b.lower;
  j["upper"] = b.upper;
  j["lower_witness"] = partition_to_json(b.lower_witness);
  j["upper_witness"] = partition_to_json(b.upper_witness);
  j["certified"] = b.certified;
  j["evaluated"] = b.evaluated;
  return j;
}

json certificate_to_json(const Certificate& c) {
  json j;
  j["theorem_id"] = c.theorem;
  json h = json::object();
  for (const auto& [k, v] : c.hypotheses) {
    if (std::isfinite(v))
      h[k] = v;
    else
      h[k] = v > 0 ? "inf" : (v < 0 ? "-inf" : "nan");
  }
  j["hypothesis_values"] = std::move(h);
  j["claimed_bounds"] = {{"lower", c.claimed.lower}, {"upper", c.claimed.upper}};
  j["true_bounds"] = c.truth ? universal_bounds_to_json(*c.truth) : json();
  j["verdict"] = to_string(c.verdict);
  j["notes"] = c.notes;
  return j;
}

json parse_json_text(const std::string& text, const std::string& origin) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    // Translate the byte offset into line:column.
    std::size_t line = 1, col = 1;
    for (std::size_t k = 0; k + 1 < e.byte && k < text.size(); ++k) {
      if (text[k] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw InputError(origin + ":" + std::to_string(line) + ":" +
                     std::to_string(col) + ": JSON syntax error: " + e.what());
  }
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json_text(ss.str(), path);
}

}  // namespace cfw
