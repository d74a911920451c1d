#include "gridcode/grid.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <mutex>
#include <numeric>
#include <ostream>
#include <sstream>
#include <unordered_set>

#include "gridcode/error.hpp"

namespace gridcode {

std::ostream& operator<<(std::ostream& os, Cell c) { return os << '(' << c.x << ',' << c.y << ')'; }

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return -floor_div(-a, b); }

std::int64_t floor_mod(std::int64_t a, std::int64_t b) { return a - floor_div(a, b) * b; }

namespace {

// Returns g = gcd(a, b) >= 0 and s, t with s*a + t*b = g.
std::int64_t ext_gcd(std::int64_t a, std::int64_t b, std::int64_t& s, std::int64_t& t) {
  std::int64_t old_r = a, r = b, old_s = 1, cur_s = 0, old_t = 0, cur_t = 1;
  while (r != 0) {
    const std::int64_t q = old_r / r;
    std::tie(old_r, r) = std::pair{r, old_r - q * r};
    std::tie(old_s, cur_s) = std::pair{cur_s, old_s - q * cur_s};
    std::tie(old_t, cur_t) = std::pair{cur_t, old_t - q * cur_t};
  }
  if (old_r < 0) {
    old_r = -old_r;
    old_s = -old_s;
    old_t = -old_t;
  }
  s = old_s;
  t = old_t;
  return old_r;
}

}  // namespace

Lattice2::Lattice2(Cell u, Cell w) : u_(u), w_(w) {
  const std::int64_t det = determinant();
  if (det == 0) throw Error(ErrorKind::Parse, "lattice basis is degenerate (determinant 0)");
  std::int64_t s = 0, t = 0;
  const std::int64_t c = ext_gcd(u.y, w.y, s, t);
  // s*u + t*w = (b', c); the kernel combination gives the horizontal generator.
  const std::int64_t b_raw = s * u.x + t * w.x;
  const std::int64_t a = std::abs(det) / c;
  hnf_a_ = a;
  hnf_c_ = c;
  hnf_b_ = floor_mod(b_raw, a);
}

bool Lattice2::contains(Cell c) const noexcept {
  if (floor_mod(c.y, hnf_c_) != 0) return false;
  const std::int64_t m = c.y / hnf_c_;
  return floor_mod(c.x - m * hnf_b_, hnf_a_) == 0;
}

Cell Lattice2::reduce(Cell c) const noexcept {
  const std::int64_t m = floor_div(c.y, hnf_c_);
  return {floor_mod(c.x - m * hnf_b_, hnf_a_), c.y - m * hnf_c_};
}

struct GridModel::BallCache {
  std::mutex mutex;
  std::map<std::pair<std::size_t, int>, std::vector<Cell>> balls;  // offsets from the coset rep
};

GridModel::GridModel(std::string name, Lattice2 translations, std::vector<Cell> cosets,
                     std::vector<std::vector<Cell>> neighbor_offsets, bool mirrored)
    : name_(std::move(name)),
      translations_(translations),
      cosets_(std::move(cosets)),
      offsets_(std::move(neighbor_offsets)),
      mirrored_(mirrored),
      cache_(std::make_shared<BallCache>()) {
  if (cosets_.empty() || cosets_.size() != offsets_.size())
    throw Error(ErrorKind::Parse, "grid '" + name_ + "': need one offset list per coset representative");
  if (static_cast<std::int64_t>(cosets_.size()) != translations_.index())
    throw Error(ErrorKind::Parse, "grid '" + name_ + "': coset count does not match lattice index");
  for (const Cell& d : cosets_) {
    const Cell key = translations_.reduce(d);
    if (std::find(coset_keys_.begin(), coset_keys_.end(), key) != coset_keys_.end())
      throw Error(ErrorKind::Parse, "grid '" + name_ + "': two coset representatives are T-equivalent");
    coset_keys_.push_back(key);
  }
  for (std::size_t i = 0; i < cosets_.size(); ++i) {
    for (const Cell& o : offsets_[i]) {
      if (o == Cell{0, 0}) throw Error(ErrorKind::Parse, "grid '" + name_ + "': zero neighbor offset");
      const std::size_t j = coset_of(cosets_[i] + o);
      if (std::find(offsets_[j].begin(), offsets_[j].end(), -o) == offsets_[j].end())
        throw Error(ErrorKind::Parse, "grid '" + name_ + "': adjacency is not symmetric");
    }
  }
}

std::size_t GridModel::coset_of(Cell c) const {
  const Cell key = translations_.reduce(c);
  for (std::size_t i = 0; i < coset_keys_.size(); ++i)
    if (coset_keys_[i] == key) return i;
  throw Error(ErrorKind::Internal, "cell outside every coset");
}

std::vector<Cell> GridModel::neighbors(Cell c) const {
  const auto& offs = offsets_[coset_of(c)];
  std::vector<Cell> out;
  out.reserve(offs.size());
  for (const Cell& o : offs) out.push_back(c + o);
  return out;
}

std::vector<Cell> GridModel::ball(Cell c, int r) const {
  if (r < 0) throw Error(ErrorKind::Internal, "negative radius");
  const std::size_t coset = coset_of(c);
  const Cell rep = cosets_[coset];
  std::vector<Cell> stencil;
  {
    std::lock_guard lock(cache_->mutex);
    auto it = cache_->balls.find({coset, r});
    if (it != cache_->balls.end()) stencil = it->second;
  }
  if (stencil.empty()) {
    std::unordered_set<Cell, CellHash> seen{rep};
    std::vector<Cell> frontier{rep};
    for (int step = 0; step < r; ++step) {
      std::vector<Cell> next;
      for (const Cell& f : frontier)
        for (const Cell& n : neighbors(f))
          if (seen.insert(n).second) next.push_back(n);
      frontier = std::move(next);
    }
    for (const Cell& s : seen) stencil.push_back(s - rep);
    std::sort(stencil.begin(), stencil.end());
    std::lock_guard lock(cache_->mutex);
    cache_->balls.emplace(std::pair{coset, r}, stencil);
  }
  const Cell shift = c;
  for (Cell& s : stencil) s = s + shift;
  return stencil;
}

int GridModel::distance(Cell a, Cell b, int max_radius) const {
  for (int r = 0; r <= max_radius; ++r) {
    const auto ball_r = ball(a, r);
    if (std::binary_search(ball_r.begin(), ball_r.end(), b)) return r;
  }
  return -1;
}

GridModel GridModel::reflected() const {
  auto mirror = [](Cell c) { return Cell{-c.x, c.y}; };
  std::vector<Cell> cosets;
  std::vector<std::vector<Cell>> offsets;
  for (std::size_t i = 0; i < cosets_.size(); ++i) {
    cosets.push_back(mirror(cosets_[i]));
    std::vector<Cell> offs;
    for (const Cell& o : offsets_[i]) offs.push_back(mirror(o));
    offsets.push_back(std::move(offs));
  }
  return GridModel(name_, Lattice2(mirror(translations_.u()), mirror(translations_.w())), std::move(cosets),
                   std::move(offsets), !mirrored_);
}

GridModel make_preset_grid(std::string_view name) {
  const Lattice2 unit({1, 0}, {0, 1});
  if (name == "hex") {
    // Brick wall: horizontal edges everywhere, vertical edge (x,y)-(x,y+1) iff x+y even.
    return GridModel("hex", Lattice2({0, 2}, {1, 1}), {{0, 0}, {1, 0}},
                     {{{1, 0}, {-1, 0}, {0, 1}}, {{1, 0}, {-1, 0}, {0, -1}}});
  }
  if (name == "square") return GridModel("square", unit, {{0, 0}}, {{{1, 0}, {-1, 0}, {0, 1}, {0, -1}}});
  if (name == "king") {
    return GridModel("king", unit, {{0, 0}},
                     {{{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {1, 1}, {1, -1}, {-1, 1}, {-1, -1}}});
  }
  if (name == "triangular") {
    return GridModel("triangular", unit, {{0, 0}}, {{{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {1, 1}, {-1, -1}}});
  }
  throw Error(ErrorKind::Parse, "unknown grid preset '" + std::string(name) + "'");
}

std::vector<std::string> preset_grid_names() { return {"hex", "square", "king", "triangular"}; }

Cell parse_cell(std::string_view text) {
  const auto comma = text.find(',');
  if (comma == std::string_view::npos) throw Error(ErrorKind::Parse, "expected 'x,y', got '" + std::string(text) + "'");
  auto parse_int = [&](std::string_view part) {
    std::int64_t v = 0;
    const char* first = part.data();
    const char* last = part.data() + part.size();
    if (first != last && *first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last || first == last)
      throw Error(ErrorKind::Parse, "bad integer in '" + std::string(text) + "'");
    return v;
  };
  return {parse_int(text.substr(0, comma)), parse_int(text.substr(comma + 1))};
}

GridModel parse_grid(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line, name = "custom";
  std::vector<Cell> basis, cosets;
  std::vector<std::vector<Cell>> offsets;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream words(line);
    std::string key;
    if (!(words >> key)) continue;
    if (key == "name") {
      words >> name;
    } else if (key == "lattice") {
      std::string a, b;
      if (!(words >> a >> b)) throw Error(ErrorKind::Parse, "lattice line needs two vectors");
      basis = {parse_cell(a), parse_cell(b)};
    } else if (key == "coset") {
      std::string rep, colon, tok;
      if (!(words >> rep >> colon) || colon != ":") throw Error(ErrorKind::Parse, "coset line: 'coset x,y : offsets...'");
      cosets.push_back(parse_cell(rep));
      offsets.emplace_back();
      while (words >> tok) offsets.back().push_back(parse_cell(tok));
    } else {
      throw Error(ErrorKind::Parse, "unknown grid file key '" + key + "'");
    }
  }
  if (basis.size() != 2) throw Error(ErrorKind::Parse, "grid file lacks a lattice line");
  return GridModel(name, Lattice2(basis[0], basis[1]), std::move(cosets), std::move(offsets));
}

GridModel load_grid(const std::string& name_or_path) {
  const auto presets = preset_grid_names();
  if (std::find(presets.begin(), presets.end(), name_or_path) != presets.end()) return make_preset_grid(name_or_path);
  std::ifstream file(name_or_path);
  if (!file) throw Error(ErrorKind::Parse, "unknown grid '" + name_or_path + "' (not a preset, not a readable file)");
  std::stringstream buf;
  buf << file.rdbuf();
  return parse_grid(buf.str());
}

NormalizedPeriod normalize_period(const GridModel& grid, Cell raw) {
  if (raw == Cell{0, 0}) throw Error(ErrorKind::DegeneratePeriod, "zero period vector");
  if (raw.y == 0) {
    std::ostringstream msg;
    msg << "horizontal period " << raw << " (transpose the grid instead)";
    throw Error(ErrorKind::DegeneratePeriod, msg.str());
  }
  if (!grid.translations().contains(raw)) {
    std::ostringstream msg;
    msg << "period " << raw << " is not a translation of grid '" << grid.name() << "'";
    throw Error(ErrorKind::NotInLattice, msg.str());
  }
  const Cell v = raw.y < 0 ? -raw : raw;
  if (v.x < 0) return {grid.reflected(), {-v.x, v.y}, true};
  return {grid, {v.x, v.y}, false};
}

Cell reduce_mod_period(PeriodVector v, Cell c) {
  const std::int64_t k = floor_div(c.y, v.y);
  return c - k * v.cell();
}

}  // namespace gridcode
