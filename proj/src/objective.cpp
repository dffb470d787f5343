#include "topsel/objective.hpp"

#include <algorithm>
#include <charconv>
#include <tuple>

#include "topsel/error.hpp"
#include "topsel/rips.hpp"

namespace topsel {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

int parse_int(std::string_view s, std::string_view what) {
  s = trim(s);
  int value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size())
    fail(ErrorCode::Parse, "cannot parse " + std::string(what) + " from '" + std::string(s) + "'");
  return value;
}

}  // namespace

Functional Functional::parse(std::string_view spec) {
  Functional f;
  std::string_view head = spec;
  std::string_view tail;
  if (auto semi = spec.find(';'); semi != std::string_view::npos) {
    head = spec.substr(0, semi);
    tail = spec.substr(semi + 1);
  }
  head = trim(head);
  if (head == "total") {
    f.kind = FunctionalKind::TotalPersistence;
  } else if (head == "max") {
    f.kind = FunctionalKind::MaxPersistence;
  } else if (head.starts_with("top:")) {
    f.kind = FunctionalKind::TopL;
    f.ell = parse_int(head.substr(4), "top-l count");
    if (f.ell < 1) fail(ErrorCode::Parse, "top-l count must be positive");
  } else {
    fail(ErrorCode::Parse, "unknown functional '" + std::string(head) + "' (expected total, max or top:<l>)");
  }
  tail = trim(tail);
  if (!tail.empty()) {
    if (!tail.starts_with("degrees=")) fail(ErrorCode::Parse, "expected 'degrees=<list>' after ';'");
    f.degrees.clear();
    std::string_view list = tail.substr(8);
    while (!list.empty()) {
      auto comma = list.find(',');
      f.degrees.push_back(parse_int(list.substr(0, comma), "degree"));
      if (comma == std::string_view::npos) break;
      list.remove_prefix(comma + 1);
    }
    if (f.degrees.empty()) fail(ErrorCode::Parse, "empty degree list");
  }
  std::sort(f.degrees.begin(), f.degrees.end());
  f.degrees.erase(std::unique(f.degrees.begin(), f.degrees.end()), f.degrees.end());
  return f;
}

std::string Functional::to_string() const {
  std::string s;
  switch (kind) {
    case FunctionalKind::TotalPersistence: s = "total"; break;
    case FunctionalKind::MaxPersistence: s = "max"; break;
    case FunctionalKind::TopL: s = "top:" + std::to_string(ell); break;
  }
  s += ";degrees=";
  for (std::size_t i = 0; i < degrees.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(degrees[i]);
  }
  return s;
}

std::vector<const DiagramPoint*> select_active(const Functional& f, const GradedDiagram& d) {
  std::vector<const DiagramPoint*> cand;
  for (const auto& p : d.points) {
    if (!std::binary_search(f.degrees.begin(), f.degrees.end(), p.degree)) continue;
    if (!(p.lifetime() > 0.0)) continue;
    cand.push_back(&p);
  }
  // Longest first; exact ties resolved by the smallest (entries, ranks).
  auto key = [](const DiagramPoint* p) {
    const Provenance* pr = p->provenance ? &*p->provenance : nullptr;
    return pr ? std::make_tuple(pr->birth_entry, pr->death_entry, pr->birth_rank, pr->death_rank)
              : std::make_tuple(Entry{}, Entry{}, std::size_t{0}, std::size_t{0});
  };
  std::sort(cand.begin(), cand.end(), [&](const DiagramPoint* a, const DiagramPoint* b) {
    if (a->lifetime() != b->lifetime()) return a->lifetime() > b->lifetime();
    return key(a) < key(b);
  });
  std::size_t keep = cand.size();
  if (f.kind == FunctionalKind::MaxPersistence) keep = std::min<std::size_t>(keep, 1);
  if (f.kind == FunctionalKind::TopL) keep = std::min<std::size_t>(keep, static_cast<std::size_t>(f.ell));
  cand.resize(keep);
  return cand;
}

double evaluate(const Functional& f, const GradedDiagram& d) {
  double total = 0.0;
  for (const DiagramPoint* p : select_active(f, d)) total += p->lifetime();
  return total;
}

GradientReport gradient(const Functional& f, const GradedDiagram& d, const ComponentDistances& cd,
                        std::span<const double> v) {
  const Eigen::Index p = cd.components();
  if (static_cast<Eigen::Index>(v.size()) != p) fail(ErrorCode::InvalidVector, "combination vector length mismatch");
  GradientReport r;
  r.grad = Eigen::VectorXd::Zero(p);
  for (const DiagramPoint* pt : select_active(f, d)) {
    if (!pt->provenance) fail(ErrorCode::InvalidArgument, "gradient needs diagram provenance");
    const Provenance& pr = *pt->provenance;
    r.value += pt->lifetime();
    for (Eigen::Index j = 0; j < p; ++j) {
      const auto& D = cd.mats[static_cast<std::size_t>(j)];
      r.grad(j) += D(pr.death_entry.row, pr.death_entry.col) - D(pr.birth_entry.row, pr.birth_entry.col);
    }
    r.active_pairs.push_back({pr.birth, pr.death, pr.birth_entry, pr.death_entry});
  }
  // d|v_j|/dv_j, taking the right derivative at 0
  for (Eigen::Index j = 0; j < p; ++j)
    if (v[static_cast<std::size_t>(j)] < 0.0) r.grad(j) = -r.grad(j);
  r.projected_grad = r.grad.array() - r.grad.mean();
  return r;
}

Evaluation evaluate_at(const Functional& f, const ComponentDistances& cd, std::span<const double> v) {
  Evaluation e;
  const Eigen::MatrixXd M = combo_distance(cd, v);
  e.diagram = rips_diagram(M, f.degrees, /*validate=*/false);
  e.report = gradient(f, e.diagram, cd, v);
  return e;
}

WindowScan scan_window(const TimeSeries& x, int min_window, int max_window, const Functional& f) {
  if (min_window > max_window) fail(ErrorCode::InvalidWindow, "empty window range");
  WindowScan scan;
  scan_windows(x, min_window, max_window, [&](int L, const ComponentDistances& cd) {
    const std::vector<double> v(static_cast<std::size_t>(cd.components()), 1.0 / static_cast<double>(cd.components()));
    const double value = evaluate(f, rips_diagram(combo_distance(cd, v), f.degrees, /*validate=*/false));
    if (scan.values.empty() || value > scan.values[static_cast<std::size_t>(scan.best - min_window)]) scan.best = L;
    scan.windows.push_back(L);
    scan.values.push_back(value);
  });
  return scan;
}

}  // namespace topsel
