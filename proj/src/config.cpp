// Copyright anisocurv contributors
// SPDX-License-Identifier: Apache-2.0
#include "anisocurv/experiment.hpp"

#include <yaml-cpp/yaml.h>

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace anisocurv {

namespace {

class Parser {
 public:
  explicit Parser(std::string source) : source_(std::move(source)) {}

  [[noreturn]] void fail(const YAML::Node& node, const std::string& field, const std::string& msg) const {
    std::ostringstream os;
    os << source_;
    if (node.Mark().line >= 0) os << ":" << node.Mark().line + 1;
    if (!field.empty()) os << ": field '" << field << "'";
    os << ": " << msg;
    throw Error(ErrorCode::config_error, os.str());
  }

  int line(const YAML::Node& node) const { return node.Mark().line + 1; }

  void expect_map(const YAML::Node& node, const std::string& what) const {
    if (!node.IsMap()) fail(node, what, "expected a table");
  }

  void only_keys(const YAML::Node& node, const std::set<std::string>& keys, const std::string& where) const {
    for (const auto& kv : node) {
      const auto key = kv.first.as<std::string>();
      if (!keys.count(key)) fail(kv.first, key, "unknown key in " + where);
    }
  }

  template <class T>
  T scalar(const YAML::Node& node, const std::string& field) const {
    if (!node.IsScalar()) fail(node, field, "expected a scalar");
    try {
      return node.as<T>();
    } catch (const YAML::Exception&) {
      fail(node, field, "cannot read value '" + node.Scalar() + "'");
    }
  }

  template <class T>
  T get(const YAML::Node& map, const std::string& key, T fallback) const {
    const YAML::Node v = map[key];
    if (!v) return fallback;
    return scalar<T>(v, key);
  }

  std::string required_string(const YAML::Node& map, const std::string& key) const {
    const YAML::Node v = map[key];
    if (!v) fail(map, key, "missing");
    return scalar<std::string>(v, key);
  }

  double positive(const YAML::Node& map, const std::string& key, double fallback) const {
    const double v = get<double>(map, key, fallback);
    if (!(v > 0.0)) fail(map[key] ? map[key] : map, key, "must be positive");
    return v;
  }

  std::vector<double> numbers(const YAML::Node& node, const std::string& field) const {
    if (!node.IsSequence()) fail(node, field, "expected a list of numbers");
    std::vector<double> out;
    for (const auto& x : node) out.push_back(scalar<double>(x, field));
    return out;
  }

  Vec point(const YAML::Node& node, const std::string& field) const {
    const auto xs = numbers(node, field);
    if (xs.size() < 2 || xs.size() > 3) fail(node, field, "points have 2 or 3 coordinates");
    Vec v(static_cast<Eigen::Index>(xs.size()));
    for (std::size_t i = 0; i < xs.size(); ++i) v(static_cast<Eigen::Index>(i)) = xs[i];
    return v;
  }

  Vec required_point(const YAML::Node& map, const std::string& key) const {
    if (!map[key]) fail(map, key, "missing");
    return point(map[key], key);
  }

  Box box(const YAML::Node& node, const std::string& field) const {
    expect_map(node, field);
    only_keys(node, {"lo", "hi"}, field);
    Box b{required_point(node, "lo"), required_point(node, "hi")};
    if (b.lo.size() != b.hi.size()) fail(node, field, "lo and hi differ in dimension");
    for (Eigen::Index i = 0; i < b.lo.size(); ++i)
      if (!(b.lo(i) < b.hi(i))) fail(node, field, "lo must be below hi in every coordinate");
    return b;
  }

  /// Either an explicit list or {from, to, step}.
  std::vector<double> grid(const YAML::Node& node, const std::string& field) const {
    if (node.IsSequence()) {
      auto xs = numbers(node, field);
      for (double x : xs)
        if (!(x > 0.0)) fail(node, field, "grid values must be positive");
      return xs;
    }
    expect_map(node, field);
    only_keys(node, {"from", "to", "step"}, field);
    const double from = positive(node, "from", 0.1);
    const double to = positive(node, "to", 2.0);
    const double step = positive(node, "step", 0.1);
    if (to < from) fail(node, field, "'to' is below 'from'");
    std::vector<double> xs;
    const auto count = static_cast<long>(std::floor((to - from) / step + 1e-9));
    for (long i = 0; i <= count; ++i) xs.push_back(from + static_cast<double>(i) * step);
    return xs;
  }

  NamedNorm norm(const YAML::Node& node) const {
    expect_map(node, "norms");
    only_keys(node, {"name", "kind", "dim", "q", "p", "smoothing", "tolerance"}, "norm");
    const std::string name = required_string(node, "name");
    const std::string kind = required_string(node, "kind");
    try {
      if (kind == "euclidean") {
        return {name, Norm::euclidean(get<int>(node, "dim", 2)), get<double>(node, "tolerance", 0.0), line(node)};
      }
      if (kind == "ellipsoidal") {
        if (!node["q"] || !node["q"].IsSequence()) fail(node, "q", "missing matrix");
        const YAML::Node rows = node["q"];
        const auto d = static_cast<Eigen::Index>(rows.size());
        Mat q(d, d);
        for (Eigen::Index i = 0; i < d; ++i) {
          const auto row = numbers(rows[static_cast<std::size_t>(i)], "q");
          if (static_cast<Eigen::Index>(row.size()) != d) fail(rows, "q", "matrix must be square");
          for (Eigen::Index j = 0; j < d; ++j) q(i, j) = row[static_cast<std::size_t>(j)];
        }
        return {name, Norm::ellipsoidal(q), get<double>(node, "tolerance", 0.0), line(node)};
      }
      if (kind == "smoothed-lp") {
        return {name, Norm::smoothed_lp(get<int>(node, "dim", 2), get<double>(node, "p", 4.0), get<double>(node, "smoothing", 0.05)),
                get<double>(node, "tolerance", 0.0), line(node)};
      }
    } catch (const Error& e) {
      if (e.code() == ErrorCode::config_error) throw;
      fail(node, "", "norm '" + name + "': " + e.what());
    }
    fail(node, "kind", "unknown norm kind '" + kind + "'");
  }

  NamedShape shape(const YAML::Node& node, const ExperimentConfig& cfg) const {
    expect_map(node, "shapes");
    const std::string name = required_string(node, "name");
    const std::string kind = required_string(node, "kind");
    auto lookup = [&](const YAML::Node& ref, const std::string& field) -> const Shape& {
      const auto target = scalar<std::string>(ref, field);
      const NamedShape* s = cfg.find_shape(target);
      if (!s) fail(ref, field, "undeclared shape '" + target + "'");
      return s->shape;
    };
    try {
      if (kind == "ball") {
        only_keys(node, {"name", "kind", "center", "radius"}, "ball");
        return {name, Shape::ball(required_point(node, "center"), positive(node, "radius", 1.0)), line(node)};
      }
      if (kind == "ellipsoid") {
        only_keys(node, {"name", "kind", "center", "semiaxes"}, "ellipsoid");
        return {name, Shape::ellipsoid(required_point(node, "center"), required_point(node, "semiaxes")), line(node)};
      }
      if (kind == "wulff") {
        only_keys(node, {"name", "kind", "norm", "center", "radius"}, "wulff");
        const auto nname = required_string(node, "norm");
        const NamedNorm* nn = cfg.find_norm(nname);
        if (!nn) fail(node["norm"], "norm", "undeclared norm '" + nname + "'");
        return {name, Shape::wulff_body(nn->norm, required_point(node, "center"), positive(node, "radius", 1.0)), line(node)};
      }
      if (kind == "polytope") {
        only_keys(node, {"name", "kind", "vertices"}, "polytope");
        if (!node["vertices"] || !node["vertices"].IsSequence()) fail(node, "vertices", "missing list of points");
        std::vector<Vec> vs;
        for (const auto& v : node["vertices"]) vs.push_back(point(v, "vertices"));
        return {name, Shape::polytope(vs), line(node)};
      }
      if (kind == "segments") {
        only_keys(node, {"name", "kind", "segments"}, "segments");
        if (!node["segments"] || !node["segments"].IsSequence()) fail(node, "segments", "missing list of point pairs");
        std::vector<std::pair<Vec, Vec>> segs;
        for (const auto& s : node["segments"]) {
          if (!s.IsSequence() || s.size() != 2) fail(s, "segments", "each segment is a pair of points");
          segs.emplace_back(point(s[0], "segments"), point(s[1], "segments"));
        }
        return {name, Shape::segment_union(segs), line(node)};
      }
      if (kind == "cap-lens") {
        only_keys(node, {"name", "kind", "eps"}, "cap-lens");
        return {name, Shape::cap_lens(positive(node, "eps", 0.5)), line(node)};
      }
      if (kind == "union") {
        only_keys(node, {"name", "kind", "parts"}, "union");
        if (!node["parts"] || !node["parts"].IsSequence()) fail(node, "parts", "missing list of shape names");
        std::vector<Shape> parts;
        for (const auto& p : node["parts"]) parts.push_back(lookup(p, "parts"));
        return {name, Shape::disjoint_union(parts), line(node)};
      }
      if (kind == "complement") {
        only_keys(node, {"name", "kind", "of"}, "complement");
        if (!node["of"]) fail(node, "of", "missing");
        return {name, lookup(node["of"], "of").complement(), line(node)};
      }
    } catch (const Error& e) {
      if (e.code() == ErrorCode::config_error) throw;
      fail(node, "", "shape '" + name + "': " + e.what());
    }
    fail(node, "kind", "unknown shape kind '" + kind + "'");
  }

  CheckSpec check(const YAML::Node& node, const ExperimentConfig& cfg) const {
    static const std::set<std::string> kTypes = {"tube",      "measures",        "jump",        "invariance",     "minkowski",
                                                 "volume-identity", "heintze-karcher", "alexandrov", "lower-bound", "mean-convexity",
                                                 "maclaurin", "reach"};
    expect_map(node, "checks");
    only_keys(node,
              {"name", "type", "shape", "norm", "expect", "samples", "r", "tolerance", "rho", "error_factor", "fit_degree", "fit_max",
               "expect_coefficients", "fit_tolerance", "voxel", "indices", "expect_theta", "window", "at", "step", "points", "expect_jump", "quota",
               "bubble", "expect_count", "expect_radius", "hk", "vectors", "length", "k", "curvature", "expect_reach", "scan_points"},
              "check");
    CheckSpec c;
    c.line = line(node);
    c.name = required_string(node, "name");
    c.type = required_string(node, "type");
    if (!kTypes.count(c.type)) fail(node["type"], "type", "unknown check type '" + c.type + "'");
    const std::string expect = get<std::string>(node, "expect", "pass");
    if (expect != "pass" && expect != "fail") fail(node["expect"], "expect", "must be 'pass' or 'fail'");
    c.expect_pass = expect == "pass";

    if (c.type != "maclaurin") {
      c.shape = required_string(node, "shape");
      c.norm = required_string(node, "norm");
      const NamedShape* s = cfg.find_shape(c.shape);
      const NamedNorm* n = cfg.find_norm(c.norm);
      if (!s) fail(node["shape"], "shape", "undeclared shape '" + c.shape + "'");
      if (!n) fail(node["norm"], "norm", "undeclared norm '" + c.norm + "'");
      if (s->shape.dim() != n->norm.dim()) fail(node, "norm", "norm and shape dimensions differ");
    }

    c.samples = get<int>(node, "samples", c.samples);
    if (c.samples < 8) fail(node["samples"], "samples", "at least 8 samples");
    c.r = get<int>(node, "r", c.r);
    c.tolerance = get<double>(node, "tolerance", 0.0);
    if (c.tolerance < 0.0) fail(node["tolerance"], "tolerance", "must be nonnegative");

    if (node["rho"]) c.rho = grid(node["rho"], "rho");
    if (c.type == "tube" && c.rho.empty()) c.rho = grid(YAML::Load("{from: 0.1, to: 2.0, step: 0.1}"), "rho");
    c.error_factor = get<double>(node, "error_factor", c.error_factor);
    c.fit_degree = get<int>(node, "fit_degree", 0);
    c.fit_max = get<double>(node, "fit_max", kInf);
    if (node["expect_coefficients"]) c.expect_coefficients = numbers(node["expect_coefficients"], "expect_coefficients");
    c.fit_tolerance = get<double>(node, "fit_tolerance", c.fit_tolerance);
    if (const YAML::Node v = node["voxel"]) {
      expect_map(v, "voxel");
      only_keys(v, {"h", "cap", "stratified", "monte_carlo_fallback", "mc_points", "foot_window"}, "voxel");
      c.voxel.h = get<double>(v, "h", 0.0);
      c.voxel.voxel_cap = get<long long>(v, "cap", c.voxel.voxel_cap);
      c.voxel.stratified = get<bool>(v, "stratified", false);
      c.voxel.monte_carlo_fallback = get<bool>(v, "monte_carlo_fallback", true);
      c.voxel.mc_points = get<long long>(v, "mc_points", c.voxel.mc_points);
      if (v["foot_window"]) c.voxel.foot_window = box(v["foot_window"], "foot_window");
    }

    if (node["indices"])
      for (double m : numbers(node["indices"], "indices")) c.indices.push_back(static_cast<int>(m));
    if (node["expect_theta"]) c.expect_theta = numbers(node["expect_theta"], "expect_theta");
    if (node["window"]) c.window = box(node["window"], "window");

    c.at = get<double>(node, "at", c.at);
    c.step = get<double>(node, "step", c.step);
    c.points = get<int>(node, "points", c.points);
    if (node["expect_jump"]) c.expect_jump = scalar<double>(node["expect_jump"], "expect_jump");
    c.quota = get<double>(node, "quota", c.quota);
    if (node["expect_reach"]) c.expect_reach = scalar<double>(node["expect_reach"], "expect_reach");
    c.scan_points = get<int>(node, "scan_points", c.scan_points);

    if (const YAML::Node b = node["bubble"]) {
      expect_map(b, "bubble");
      only_keys(b, {"tol_const", "tol_rad", "tol_fit", "tol_sing", "perimeter_samples", "check_reach_gap"}, "bubble");
      c.bubble.tol_const = get<double>(b, "tol_const", c.bubble.tol_const);
      c.bubble.tol_rad = get<double>(b, "tol_rad", c.bubble.tol_rad);
      c.bubble.tol_fit = get<double>(b, "tol_fit", c.bubble.tol_fit);
      c.bubble.tol_sing = get<double>(b, "tol_sing", c.bubble.tol_sing);
      c.bubble.perimeter_samples = get<int>(b, "perimeter_samples", c.bubble.perimeter_samples);
      c.bubble.check_reach_gap = get<bool>(b, "check_reach_gap", c.bubble.check_reach_gap);
    }
    c.expect_count = get<int>(node, "expect_count", 0);
    c.expect_radius = get<double>(node, "expect_radius", 0.0);
    if (const YAML::Node h = node["hk"]) {
      expect_map(h, "hk");
      only_keys(h, {"tol", "tol_eq", "tol_sign"}, "hk");
      c.hk.tol = get<double>(h, "tol", c.hk.tol);
      c.hk.tol_eq = get<double>(h, "tol_eq", c.hk.tol_eq);
      c.hk.tol_sign = get<double>(h, "tol_sign", c.hk.tol_sign);
    }
    c.vectors = get<int>(node, "vectors", c.vectors);
    c.length = get<int>(node, "length", c.length);
    c.k = get<int>(node, "k", c.k);
    if (c.type == "maclaurin" && (c.k < 1 || c.k > c.length)) fail(node, "k", "need 1 <= k <= length");
    if (const YAML::Node cv = node["curvature"]) {
      expect_map(cv, "curvature");
      only_keys(cv, {"r_frac", "r_cap_frac", "fd_step_rel", "tol_inf", "tol_kinv"}, "curvature");
      c.curvature.r_frac = get<double>(cv, "r_frac", c.curvature.r_frac);
      c.curvature.r_cap_frac = get<double>(cv, "r_cap_frac", c.curvature.r_cap_frac);
      c.curvature.fd_step_rel = get<double>(cv, "fd_step_rel", c.curvature.fd_step_rel);
      c.curvature.tol_inf = get<double>(cv, "tol_inf", c.curvature.tol_inf);
      c.curvature.tol_kinv = get<double>(cv, "tol_kinv", c.curvature.tol_kinv);
    }
    return c;
  }

  ExperimentConfig document(const YAML::Node& root) const {
    if (!root || root.IsNull()) fail(root, "", "empty configuration");
    expect_map(root, "configuration");
    only_keys(root, {"seed", "threads", "output_dir", "norms", "shapes", "checks"}, "configuration");
    ExperimentConfig cfg;
    cfg.source = source_;
    cfg.seed = get<std::uint64_t>(root, "seed", 0);
    cfg.threads = get<int>(root, "threads", 0);
    cfg.output_dir = get<std::string>(root, "output_dir", cfg.output_dir);
    auto unique = [&](const YAML::Node& node, const std::string& name, bool taken) {
      if (taken) fail(node, "name", "duplicate name '" + name + "'");
    };
    if (const YAML::Node ns = root["norms"]) {
      if (!ns.IsSequence()) fail(ns, "norms", "expected a list");
      for (const auto& n : ns) {
        NamedNorm nn = norm(n);
        unique(n, nn.name, cfg.find_norm(nn.name) != nullptr);
        cfg.norms.push_back(std::move(nn));
      }
    }
    if (const YAML::Node ss = root["shapes"]) {
      if (!ss.IsSequence()) fail(ss, "shapes", "expected a list");
      for (const auto& s : ss) {
        NamedShape sh = shape(s, cfg);
        unique(s, sh.name, cfg.find_shape(sh.name) != nullptr);
        cfg.shapes.push_back(std::move(sh));
      }
    }
    if (const YAML::Node cs = root["checks"]) {
      if (!cs.IsSequence()) fail(cs, "checks", "expected a list");
      std::set<std::string> names;
      for (const auto& c : cs) {
        CheckSpec spec = check(c, cfg);
        if (!names.insert(spec.name).second) fail(c, "name", "duplicate check name '" + spec.name + "'");
        cfg.checks.push_back(std::move(spec));
      }
    }
    return cfg;
  }

 private:
  std::string source_;
};

}  // namespace

const NamedNorm* ExperimentConfig::find_norm(const std::string& name) const {
  for (const auto& n : norms)
    if (n.name == name) return &n;
  return nullptr;
}

const NamedShape* ExperimentConfig::find_shape(const std::string& name) const {
  for (const auto& s : shapes)
    if (s.name == name) return &s;
  return nullptr;
}

ExperimentConfig parse_config(const std::string& text, const std::string& source) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    throw Error(ErrorCode::config_error, source + ":" + std::to_string(e.mark.line + 1) + ": " + e.msg);
  }
  return Parser(source).document(root);
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::io_error, "cannot open " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str(), path);
}

}  // namespace anisocurv
