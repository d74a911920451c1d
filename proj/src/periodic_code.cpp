#include "gridcode/periodic_code.hpp"

#include <algorithm>
#include <sstream>

#include "gridcode/error.hpp"
#include "json.hpp"

namespace gridcode {

PeriodicCode::PeriodicCode(std::string grid, CodeSpec spec, Lattice2 lattice, std::int64_t width,
                           std::int64_t height, std::vector<std::uint8_t> bits)
    : grid_(std::move(grid)), spec_(spec), lattice_(lattice), width_(width), height_(height), bits_(std::move(bits)) {
  if (width_ <= 0 || height_ <= 0 || width_ % lattice_.hnf_a() != 0 || height_ % lattice_.hnf_c() != 0)
    throw Error(ErrorKind::Parse, "bitmap " + std::to_string(width_) + "x" + std::to_string(height_) +
                                      " is not a fundamental domain of a sublattice of the periods");
  if (static_cast<std::int64_t>(bits_.size()) != width_ * height_)
    throw Error(ErrorKind::Parse, "bitmap size does not match its dimensions");
  for (auto& b : bits_) b = b != 0;
  for (std::int64_t y = 0; y < height_; ++y)
    for (std::int64_t x = 0; x < width_; ++x) {
      const Cell r = lattice_.reduce({x, y});
      if (bits_[y * width_ + x] != bits_[r.y * width_ + r.x]) {
        std::ostringstream msg;
        msg << "bitmap is not periodic under the stated periods at " << Cell{x, y};
        throw Error(ErrorKind::Parse, msg.str());
      }
    }
}

PeriodicCode PeriodicCode::from_function(std::string grid, CodeSpec spec, Lattice2 lattice,
                                         const std::function<bool(Cell)>& in_code) {
  const std::int64_t w = lattice.hnf_a(), h = lattice.hnf_c();
  std::vector<std::uint8_t> bits(static_cast<std::size_t>(w * h));
  for (std::int64_t y = 0; y < h; ++y)
    for (std::int64_t x = 0; x < w; ++x) bits[y * w + x] = in_code({x, y}) ? 1 : 0;
  return PeriodicCode(std::move(grid), spec, lattice, w, h, std::move(bits));
}

bool PeriodicCode::at(Cell c) const {
  const Cell r = lattice_.reduce(c);
  return bits_[r.y * width_ + r.x] != 0;
}

std::size_t PeriodicCode::codewords() const {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), 1));
}

PeriodicCode PeriodicCode::with_spec(CodeSpec spec) const {
  PeriodicCode copy = *this;
  copy.spec_ = spec;
  return copy;
}

CodeFormat parse_code_format(std::string_view text) {
  if (text == "json") return CodeFormat::Json;
  if (text == "text") return CodeFormat::Text;
  if (text == "tikz") return CodeFormat::Tikz;
  throw Error(ErrorKind::Parse, "unknown format '" + std::string(text) + "' (json|text|tikz)");
}

namespace {

Rational stated_density(const PeriodicCode& code) {
  return Rational(static_cast<std::int64_t>(code.codewords()), code.width() * code.height());
}

std::string row_string(const PeriodicCode& code, std::int64_t y, char one, char zero) {
  std::string row;
  for (std::int64_t x = 0; x < code.width(); ++x) row.push_back(code.bits()[y * code.width() + x] ? one : zero);
  return row;
}

PeriodicCode assemble(const std::string& grid, CodeSpec spec, Cell p, Cell q, const std::vector<std::string>& rows,
                      char one, char zero, const std::string& density) {
  if (rows.empty()) throw Error(ErrorKind::Parse, "code has no rows");
  const auto width = static_cast<std::int64_t>(rows.front().size());
  std::vector<std::uint8_t> bits;
  for (const auto& row : rows) {
    if (static_cast<std::int64_t>(row.size()) != width) throw Error(ErrorKind::Parse, "rows differ in length");
    for (char ch : row) {
      if (ch == one) bits.push_back(1);
      else if (ch == zero) bits.push_back(0);
      else throw Error(ErrorKind::Parse, std::string("unexpected bitmap character '") + ch + "'");
    }
  }
  PeriodicCode code(grid, spec, Lattice2(p, q), width, static_cast<std::int64_t>(rows.size()), std::move(bits));
  if (!density.empty() && Rational::parse(density) != stated_density(code))
    throw Error(ErrorKind::Parse, "stated density " + density + " disagrees with bitmap density " +
                                      stated_density(code).str());
  return code;
}

PeriodicCode parse_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
    const auto& periods = doc.at("periods");
    if (periods.size() != 2 || periods[0].size() != 2 || periods[1].size() != 2)
      throw Error(ErrorKind::Parse, "periods must be two [x, y] pairs");
    const CodeSpec spec{parse_code_kind(doc.at("code").get<std::string>()), doc.at("radius").get<int>()};
    return assemble(doc.at("grid").get<std::string>(), spec,
                    {periods[0][0].get<std::int64_t>(), periods[0][1].get<std::int64_t>()},
                    {periods[1][0].get<std::int64_t>(), periods[1][1].get<std::int64_t>()},
                    doc.at("rows").get<std::vector<std::string>>(), '1', '0',
                    doc.contains("density") ? doc.at("density").get<std::string>() : std::string());
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Parse, std::string("malformed code JSON: ") + e.what());
  }
}

PeriodicCode parse_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line, grid, density;
  CodeSpec spec;
  std::vector<Cell> periods;
  std::int64_t width = -1, height = -1;
  std::vector<std::string> rows;
  bool in_rows = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (in_rows) {
      if (line.empty()) continue;
      rows.push_back(line);
      continue;
    }
    if (line.empty() || line[0] == '#') continue;  // header comments; rows only follow "size"

    std::istringstream words(line);
    std::string key;
    if (!(words >> key)) continue;
    if (key == "grid") {
      words >> grid;
    } else if (key == "code") {
      std::string kind;
      words >> kind;
      spec.kind = parse_code_kind(kind);
    } else if (key == "radius") {
      if (!(words >> spec.radius)) throw Error(ErrorKind::Parse, "bad radius");
    } else if (key == "periods") {
      std::string a, b;
      if (!(words >> a >> b)) throw Error(ErrorKind::Parse, "periods line needs two vectors");
      periods = {parse_cell(a), parse_cell(b)};
    } else if (key == "density") {
      words >> density;
    } else if (key == "size") {
      if (!(words >> width >> height)) throw Error(ErrorKind::Parse, "size line needs width and height");
      in_rows = true;
    } else {
      throw Error(ErrorKind::Parse, "unknown code file key '" + key + "'");
    }
  }
  if (grid.empty() || periods.size() != 2 || width < 0) throw Error(ErrorKind::Parse, "incomplete code file header");
  if (static_cast<std::int64_t>(rows.size()) != height) throw Error(ErrorKind::Parse, "row count does not match size");
  for (const auto& row : rows)
    if (static_cast<std::int64_t>(row.size()) != width) throw Error(ErrorKind::Parse, "row width does not match size");
  return assemble(grid, spec, periods[0], periods[1], rows, '#', '.', density);
}

}  // namespace

std::string to_json(const PeriodicCode& code) {
  nlohmann::ordered_json doc;
  doc["format"] = "gridcode-periodic-code";
  doc["version"] = 1;
  doc["grid"] = code.grid();
  doc["code"] = code_kind_name(code.spec().kind);
  doc["radius"] = code.spec().radius;
  doc["periods"] = {{code.lattice().u().x, code.lattice().u().y}, {code.lattice().w().x, code.lattice().w().y}};
  auto rows = nlohmann::ordered_json::array();
  for (std::int64_t y = 0; y < code.height(); ++y) rows.push_back(row_string(code, y, '1', '0'));
  doc["rows"] = rows;
  doc["density"] = stated_density(code).str();
  return doc.dump(2) + "\n";
}

std::string to_text(const PeriodicCode& code) {
  std::ostringstream out;
  out << "# gridcode periodic code v1 (rows from y = 0 upward)\n";
  out << "grid " << code.grid() << "\n";
  out << "code " << code_kind_name(code.spec().kind) << "\n";
  out << "radius " << code.spec().radius << "\n";
  out << "periods " << code.lattice().u().x << ',' << code.lattice().u().y << ' ' << code.lattice().w().x << ','
      << code.lattice().w().y << "\n";
  out << "density " << stated_density(code).str() << "\n";
  out << "size " << code.width() << ' ' << code.height() << "\n";
  for (std::int64_t y = 0; y < code.height(); ++y) out << row_string(code, y, '#', '.') << "\n";
  return out.str();
}

std::string to_tikz(const PeriodicCode& code) {
  std::ostringstream out;
  out << "\\begin{tikzpicture}[scale=0.25]\n";
  for (std::int64_t y = 0; y < code.height(); ++y)
    for (std::int64_t x = 0; x < code.width(); ++x)
      if (code.bits()[y * code.width() + x]) out << "\\fill (" << x << ", " << y << ") rectangle (" << x + 1 << ", " << y + 1 << ");";
  out << "\n\\draw[gray] (0,0) grid (" << code.width() << ',' << code.height() << ");\n";
  out << "\\end{tikzpicture}\n";
  return out.str();
}

std::string format_code(const PeriodicCode& code, CodeFormat format) {
  switch (format) {
    case CodeFormat::Json: return to_json(code);
    case CodeFormat::Text: return to_text(code);
    case CodeFormat::Tikz: return to_tikz(code);
  }
  return {};
}

PeriodicCode parse_code(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) throw Error(ErrorKind::Parse, "empty code file");
  if (text[first] == '{') return parse_json(text);
  return parse_text(text);
}

}  // namespace gridcode
