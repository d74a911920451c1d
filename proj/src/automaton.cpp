#include "gridcode/automaton.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>
#include <unordered_map>

#include "gridcode/error.hpp"

namespace gridcode {

Border::Border(PeriodVector period, std::int64_t width) : period_(period), width_(width) {
  if (period.y <= 0 || width <= 0) throw Error(ErrorKind::Internal, "border needs y > 0 and W > 0");
}

std::size_t Border::position_of(Cell c) const {
  const Cell in_strip = c - Cell{strip_of(c) * width_, 0};
  const Cell r = reduce_mod_period(period_, in_strip);
  return static_cast<std::size_t>(r.y * width_ + (r.x - offset(r.y)));
}

Cell Border::cell_at(std::size_t position) const {
  const auto row = static_cast<std::int64_t>(position) / width_;
  const auto col = static_cast<std::int64_t>(position) % width_;
  return {offset(row) + col, row};
}

Border border_frontier(const GridModel& grid, PeriodVector period) {
  if (!grid.translations().contains(period.cell()))
    throw Error(ErrorKind::NotInLattice, "period is not a grid translation");
  return Border(period, grid.step_width());
}

int StripPattern::weight() const {
  int w = 0;
  for (auto b : bits) w += b != 0;
  return w;
}

namespace {

using Key = std::vector<std::uint32_t>;

struct KeyHash {
  std::size_t operator()(const Key& key) const noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (std::uint32_t k : key) {
      h ^= k;
      h *= 0x100000001b3ULL;
    }
    return static_cast<std::size_t>(h ^ (h >> 29));
  }
};

}  // namespace

struct StripAutomaton::Tables {
  struct ItemType {
    std::uint32_t class_id = 0;
    Cell anchor;
    std::vector<std::uint32_t> positions;  // border positions of the cells in strip 0
    bool critical = false;                 // no cell right of strip 0
    std::uint32_t successor = 0;           // shifted by -(W,0); unused when critical
  };

  std::vector<ItemType> items;
  std::map<std::tuple<std::uint32_t, std::int64_t, std::int64_t>, std::uint32_t> index;
  std::vector<std::vector<Cell>> offsets;  // per class: cells minus anchor
  std::uint32_t radix = 1;                 // max threshold; key = item * radix + remaining - 1
  Key incoming_keys;

  std::uint32_t pack(std::uint32_t item, int remaining) const {
    return item * radix + static_cast<std::uint32_t>(remaining - 1);
  }
  std::uint32_t item_of(std::uint32_t key) const { return key / radix; }
  int remaining_of(std::uint32_t key) const { return static_cast<int>(key % radix) + 1; }
};

namespace {

// Pattern enumeration state for one source node.
class PatternWalker {
 public:
  using Visit = std::function<bool(const std::vector<std::uint8_t>&, int, const Key&)>;

  PatternWalker(const StripAutomaton::Tables& tables, std::size_t positions, const Key& node)
      : tables_(tables), touching_(positions), finishing_(positions), bits_(positions, 0) {
    auto add = [&](std::uint32_t key) {
      const auto& item = tables_.items[tables_.item_of(key)];
      const auto local = static_cast<std::uint32_t>(keys_.size());
      keys_.push_back(key);
      remaining_.push_back(tables_.remaining_of(key));
      count_.push_back(0);
      for (std::uint32_t p : item.positions) touching_[p].push_back(local);
      if (item.critical) {
        if (item.positions.empty()) dead_ = true;
        else finishing_[*std::max_element(item.positions.begin(), item.positions.end())].push_back(local);
      }
    };
    for (std::uint32_t key : node) add(key);
    for (std::uint32_t key : tables_.incoming_keys) add(key);
  }

  /// Calls visit(bits, weight, successor) for every accepted pattern; stops
  /// early when visit returns false. Returns the number of accepted patterns.
  std::size_t run(const Visit& visit) {
    visit_ = &visit;
    accepted_ = 0;
    stop_ = false;
    if (!dead_) descend(0, 0);
    return accepted_;
  }

 private:
  void descend(std::size_t position, int weight) {
    if (stop_) return;
    if (position == bits_.size()) {
      leaf(weight);
      return;
    }
    for (std::uint8_t bit = 0; bit <= 1 && !stop_; ++bit) {
      bits_[position] = bit;
      if (bit)
        for (auto i : touching_[position]) ++count_[i];
      bool alive = true;
      for (auto i : finishing_[position])
        if (count_[i] < remaining_[i]) {
          alive = false;
          break;
        }
      if (alive) descend(position + 1, weight + bit);
      if (bit)
        for (auto i : touching_[position]) --count_[i];
    }
    bits_[position] = 0;
  }

  void leaf(int weight) {
    successor_.clear();
    for (std::size_t i = 0; i < keys_.size(); ++i) {
      if (count_[i] >= remaining_[i]) continue;
      const auto& item = tables_.items[tables_.item_of(keys_[i])];
      successor_.push_back(tables_.pack(item.successor, remaining_[i] - count_[i]));
    }
    std::sort(successor_.begin(), successor_.end());
    ++accepted_;
    if (!(*visit_)(bits_, weight, successor_)) stop_ = true;
  }

  const StripAutomaton::Tables& tables_;
  Key keys_;
  std::vector<int> remaining_, count_;
  std::vector<std::vector<std::uint32_t>> touching_, finishing_;
  std::vector<std::uint8_t> bits_;
  Key successor_;
  const Visit* visit_ = nullptr;
  std::size_t accepted_ = 0;
  bool dead_ = false;
  bool stop_ = false;
};

}  // namespace

StripAutomaton::StripAutomaton(ClauseFamily family, PeriodVector period)
    : family_(std::move(family)),
      border_(border_frontier(family_.grid, period)),
      tables_(std::make_unique<Tables>()) {
  auto& t = *tables_;
  for (const auto& clause : family_.classes) {
    std::vector<Cell> offs;
    for (const Cell& c : clause.cells) offs.push_back(c - clause.anchor());
    t.offsets.push_back(std::move(offs));
    t.radix = std::max<std::uint32_t>(t.radix, static_cast<std::uint32_t>(clause.threshold));
  }

  auto intern = [&](std::uint32_t class_id, Cell anchor) -> std::uint32_t {
    anchor = reduce_mod_period(period, anchor);
    auto [it, fresh] = t.index.try_emplace({class_id, anchor.x, anchor.y}, static_cast<std::uint32_t>(t.items.size()));
    if (fresh) {
      Tables::ItemType item;
      item.class_id = class_id;
      item.anchor = anchor;
      std::int64_t max_strip = INT64_MIN;
      for (const Cell& o : t.offsets[class_id]) {
        const Cell c = anchor + o;
        const std::int64_t strip = border_.strip_of(c);
        max_strip = std::max(max_strip, strip);
        if (strip == 0) item.positions.push_back(static_cast<std::uint32_t>(border_.position_of(c)));
      }
      std::sort(item.positions.begin(), item.positions.end());
      item.critical = max_strip <= 0;
      t.items.push_back(std::move(item));
    }
    return it->second;
  };

  // C_B: anchors per row of one period whose translate starts in strip 0.
  const auto& lattice = family_.grid.translations();
  const std::int64_t width = border_.width();
  for (std::uint32_t k = 0; k < family_.classes.size(); ++k) {
    const Cell home = family_.classes[k].anchor();
    for (std::int64_t row = 0; row < period.y; ++row) {
      std::int64_t lo = INT64_MAX, hi = INT64_MIN;
      for (const Cell& o : t.offsets[k]) {
        const std::int64_t base = border_.offset(row + o.y) - o.x;
        lo = std::min(lo, base);
        hi = std::max(hi, base + width - 1);
      }
      for (std::int64_t x = lo; x <= hi; ++x) {
        const Cell anchor{x, row};
        if (!lattice.contains(anchor - home)) continue;
        std::int64_t min_strip = INT64_MAX;
        for (const Cell& o : t.offsets[k]) min_strip = std::min(min_strip, border_.strip_of(anchor + o));
        if (min_strip != 0) continue;
        incoming_.push_back({k, anchor, family_.classes[k].threshold});
      }
    }
  }
  std::sort(incoming_.begin(), incoming_.end());
  for (const auto& pc : incoming_) t.incoming_keys.push_back(t.pack(intern(pc.class_id, pc.anchor), pc.remaining));
  std::sort(t.incoming_keys.begin(), t.incoming_keys.end());

  // Close the item table under the leftward shift.
  for (std::size_t i = 0; i < t.items.size(); ++i) {
    if (t.items[i].critical) continue;
    const std::uint32_t next = intern(t.items[i].class_id, t.items[i].anchor - Cell{width, 0});
    t.items[i].successor = next;
  }
}

StripAutomaton::~StripAutomaton() = default;
StripAutomaton::StripAutomaton(StripAutomaton&&) noexcept = default;
StripAutomaton& StripAutomaton::operator=(StripAutomaton&&) noexcept = default;

std::vector<Cell> StripAutomaton::cells_of(const PendingClause& clause) const {
  std::vector<Cell> cells;
  for (const Cell& o : tables_->offsets.at(clause.class_id)) cells.push_back(clause.anchor + o);
  return cells;
}

std::optional<AutomatonNode> StripAutomaton::step(const AutomatonNode& node, const StripPattern& pattern) const {
  if (pattern.bits.size() != border_.cells_per_period())
    throw Error(ErrorKind::Internal, "pattern size does not match the border period");
  AutomatonNode next;
  auto advance = [&](const PendingClause& clause) {
    int ones = 0;
    bool reaches_right = false;
    for (const Cell& c : cells_of(clause)) {
      const std::int64_t strip = border_.strip_of(c);
      if (strip == 0 && pattern.bits[border_.position_of(c)]) ++ones;
      if (strip > 0) reaches_right = true;
    }
    if (ones >= clause.remaining) return true;
    if (!reaches_right) return false;
    next.clauses.push_back({clause.class_id,
                            reduce_mod_period(border_.period(), clause.anchor - Cell{border_.width(), 0}),
                            clause.remaining - ones});
    return true;
  };
  for (const auto& clause : node.clauses)
    if (!advance(clause)) return std::nullopt;
  for (const auto& clause : incoming_)
    if (!advance(clause)) return std::nullopt;
  std::sort(next.clauses.begin(), next.clauses.end());
  return next;
}

BuiltAutomaton StripAutomaton::build(const BuildOptions& options) const {
  const std::size_t positions = border_.cells_per_period();
  if (positions > 62) throw Error(ErrorKind::ResourceLimit, "border period exceeds 62 cells");

  std::unordered_map<Key, NodeId, KeyHash> ids;
  std::vector<std::size_t> offsets{0};
  Key arena;
  std::vector<WeightedEdge> edges;
  std::size_t tried = 0;

  auto node_key = [&](NodeId id) {
    return Key(arena.begin() + static_cast<std::ptrdiff_t>(offsets[id]),
               arena.begin() + static_cast<std::ptrdiff_t>(offsets[id + 1]));
  };
  auto approx_bytes = [&] {
    return arena.size() * sizeof(std::uint32_t) * 2 + ids.size() * 64 + edges.size() * sizeof(WeightedEdge);
  };
  auto intern = [&](const Key& key) -> NodeId {
    auto [it, fresh] = ids.try_emplace(key, static_cast<NodeId>(ids.size()));
    if (fresh) {
      arena.insert(arena.end(), key.begin(), key.end());
      offsets.push_back(arena.size());
      if (ids.size() > options.max_nodes)
        throw Error(ErrorKind::ResourceLimit, "node cap " + std::to_string(options.max_nodes) + " exceeded");
    }
    return it->second;
  };
  intern({});

  constexpr std::size_t kChunk = 2048;
  using Successors = std::vector<std::pair<Key, Weight>>;
  std::size_t head = 0;
  while (head < ids.size()) {
    const std::size_t end = std::min(ids.size(), head + kChunk);
    std::vector<Key> sources;
    for (std::size_t id = head; id < end; ++id) sources.push_back(node_key(static_cast<NodeId>(id)));
    std::vector<Successors> found(sources.size());
    std::vector<std::size_t> counts(sources.size(), 0);
    const auto count = static_cast<std::int64_t>(sources.size());

#pragma omp parallel for num_threads(options.threads > 0 ? options.threads : 1) schedule(dynamic, 16) if (options.threads > 1)
    for (std::int64_t i = 0; i < count; ++i) {
      std::unordered_map<Key, std::size_t, KeyHash> slot;
      Successors& out = found[static_cast<std::size_t>(i)];
      PatternWalker walker(*tables_, positions, sources[static_cast<std::size_t>(i)]);
      counts[static_cast<std::size_t>(i)] = walker.run([&](const std::vector<std::uint8_t>&, int weight, const Key& next) {
        auto [it, fresh] = slot.try_emplace(next, out.size());
        if (fresh) out.emplace_back(next, weight);
        else out[it->second].second = std::min<Weight>(out[it->second].second, weight);
        return true;
      });
    }

    for (std::size_t i = 0; i < sources.size(); ++i) {
      tried += counts[i];
      const auto from = static_cast<NodeId>(head + i);
      for (const auto& [key, weight] : found[i]) {
        edges.push_back({from, intern(key), weight});
        if (edges.size() > options.max_edges)
          throw Error(ErrorKind::ResourceLimit, "edge cap " + std::to_string(options.max_edges) + " exceeded");
      }
      if (approx_bytes() > options.max_bytes)
        throw Error(ErrorKind::ResourceLimit, "memory cap " + std::to_string(options.max_bytes) + " bytes exceeded");
    }
    head = end;
  }

  BuiltAutomaton built;
  built.graph = WeightedDigraph(ids.size(), 0, std::move(edges));
  built.key_offsets = std::move(offsets);
  built.keys = std::move(arena);
  built.patterns_tried = tried;
  return built;
}

AutomatonNode StripAutomaton::decode(const BuiltAutomaton& built, NodeId id) const {
  AutomatonNode node;
  for (std::size_t i = built.key_offsets.at(id); i < built.key_offsets.at(id + 1); ++i) {
    const std::uint32_t key = built.keys[i];
    const auto& item = tables_->items[tables_->item_of(key)];
    node.clauses.push_back({item.class_id, item.anchor, tables_->remaining_of(key)});
  }
  std::sort(node.clauses.begin(), node.clauses.end());
  return node;
}

std::optional<StripPattern> StripAutomaton::find_pattern(const BuiltAutomaton& built, NodeId from, NodeId to,
                                                         Weight weight) const {
  auto key_of = [&](NodeId id) {
    return Key(built.keys.begin() + static_cast<std::ptrdiff_t>(built.key_offsets.at(id)),
               built.keys.begin() + static_cast<std::ptrdiff_t>(built.key_offsets.at(id + 1)));
  };
  const Key target = key_of(to);
  std::optional<StripPattern> result;
  PatternWalker walker(*tables_, border_.cells_per_period(), key_of(from));
  walker.run([&](const std::vector<std::uint8_t>& bits, int w, const Key& next) {
    if (w == weight && next == target) {
      result = StripPattern{bits};
      return false;
    }
    return true;
  });
  return result;
}

std::string StripAutomaton::format_node_table(const BuiltAutomaton& built) const {
  std::ostringstream out;
  out << "# node : class@anchor_x,anchor_y/remaining ...\n";
  for (NodeId id = 0; id < built.node_count(); ++id) {
    out << id << " :";
    for (const auto& pc : decode(built, id).clauses)
      out << ' ' << pc.class_id << '@' << pc.anchor.x << ',' << pc.anchor.y << '/' << pc.remaining;
    out << '\n';
  }
  return out.str();
}

}  // namespace gridcode
