#include "farecmp/geo.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include <locale.h>
#include <wctype.h>

#include "farecmp/csv.h"
#include "farecmp/parse_num.h"

namespace farecmp {

invalid_circuity::invalid_circuity(double c)
    : error{"circuity must be >= 1, got " + std::to_string(c)} {}

unknown_area::unknown_area(std::string name)
    : error{"unknown area \"" + name + "\""}, name_{std::move(name)} {}

duplicate_area::duplicate_area(std::string normalized_name)
    : error{"duplicate area \"" + normalized_name + "\""}, name_{std::move(normalized_name)} {}

geo_point::geo_point(double lat, double lon) : lat_{lat}, lon_{lon} {
  if (!(lat >= -90.0 && lat <= 90.0) || !(lon >= -180.0 && lon <= 180.0)) {
    std::ostringstream msg;
    msg << "coordinate out of range: (" << lat << ", " << lon << ")";
    throw invalid_coordinate{msg.str()};
  }
}

namespace {

locale_t utf8_locale() {
  static locale_t const loc = [] {
    auto l = newlocale(LC_CTYPE_MASK, "C.UTF-8", locale_t{});
    if (l == locale_t{}) {
      l = newlocale(LC_CTYPE_MASK, "en_US.UTF-8", locale_t{});
    }
    return l;
  }();
  return loc;
}

// Decodes one UTF-8 sequence starting at s[i]. Returns the code point and
// advances i; invalid bytes decode as themselves (len 1, cp = byte | flag).
bool decode_utf8(std::string_view s, std::size_t& i, char32_t& cp) {
  auto const b0 = static_cast<unsigned char>(s[i]);
  auto len = std::size_t{0};
  if (b0 < 0x80) {
    cp = b0;
    len = 1;
  } else if ((b0 & 0xE0) == 0xC0) {
    cp = b0 & 0x1F;
    len = 2;
  } else if ((b0 & 0xF0) == 0xE0) {
    cp = b0 & 0x0F;
    len = 3;
  } else if ((b0 & 0xF8) == 0xF0) {
    cp = b0 & 0x07;
    len = 4;
  } else {
    ++i;
    return false;
  }
  if (i + len > s.size()) {
    ++i;
    return false;
  }
  for (auto k = std::size_t{1}; k != len; ++k) {
    auto const b = static_cast<unsigned char>(s[i + k]);
    if ((b & 0xC0) != 0x80) {
      ++i;
      return false;
    }
    cp = (cp << 6) | (b & 0x3F);
  }
  i += len;
  return true;
}

void encode_utf8(char32_t cp, std::string& out) {
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp < 0x10000) {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    out += static_cast<char>(0xF0 | (cp >> 18));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
}

char32_t to_lower(char32_t cp) {
  if (cp < 0x80) {
    return (cp >= 'A' && cp <= 'Z') ? cp + ('a' - 'A') : cp;
  }
  auto const loc = utf8_locale();
  if (loc == locale_t{}) {
    return cp;
  }
  return static_cast<char32_t>(towlower_l(static_cast<wint_t>(cp), loc));
}

bool is_space(char32_t cp) {
  if (cp < 0x80) {
    return cp == ' ' || (cp >= '\t' && cp <= '\r');
  }
  // glibc leaves the no-break spaces out of iswspace.
  if (cp == 0x00A0 || cp == 0x2007 || cp == 0x202F || cp == 0xFEFF) {
    return true;
  }
  auto const loc = utf8_locale();
  return loc != locale_t{} && iswspace_l(static_cast<wint_t>(cp), loc) != 0;
}

double to_radians(double deg) { return deg * std::numbers::pi / 180.0; }

}  // namespace

std::string normalize_area_name(std::string_view s) {
  std::string lowered;
  lowered.reserve(s.size());
  // Byte offsets in `lowered` bounding the non-space content.
  auto content_begin = std::string::npos;
  auto content_end = std::size_t{0};
  for (auto i = std::size_t{0}; i < s.size();) {
    auto const start = i;
    char32_t cp = 0;
    if (!decode_utf8(s, i, cp)) {
      if (content_begin == std::string::npos) {
        content_begin = lowered.size();
      }
      lowered += s[start];
      content_end = lowered.size();
      continue;
    }
    auto const space = is_space(cp);
    if (!space && content_begin == std::string::npos) {
      content_begin = lowered.size();
    }
    encode_utf8(to_lower(cp), lowered);
    if (!space) {
      content_end = lowered.size();
    }
  }
  if (content_begin == std::string::npos) {
    return {};
  }
  return lowered.substr(content_begin, content_end - content_begin);
}

area_registry::area_registry(std::vector<area> areas) {
  for (auto& a : areas) {
    a.name = std::string{csv::trim(a.name)};
    if (a.name.empty()) {
      throw error{"area name must not be empty"};
    }
  }
  std::vector<std::pair<std::string, area>> keyed;
  keyed.reserve(areas.size());
  for (auto& a : areas) {
    keyed.emplace_back(normalize_area_name(a.name), std::move(a));
  }
  std::stable_sort(begin(keyed), end(keyed),
                   [](auto const& x, auto const& y) { return x.first < y.first; });
  for (auto& [key, a] : keyed) {
    if (by_key_.contains(key)) {
      throw duplicate_area{key};
    }
    by_key_.emplace(key, ordered_.size());
    ordered_.push_back(std::move(a));
  }
}

area const* area_registry::find(std::string_view name) const {
  auto const it = by_key_.find(normalize_area_name(name));
  return it == end(by_key_) ? nullptr : &ordered_[it->second];
}

geo_point area_registry::resolve(std::string_view name) const {
  auto const* a = find(name);
  if (a == nullptr) {
    throw unknown_area{std::string{name}};
  }
  return a->centroid;
}

std::vector<std::string> area_registry::names() const {
  std::vector<std::string> out;
  out.reserve(ordered_.size());
  for (auto const& a : ordered_) {
    out.push_back(a.name);
  }
  return out;
}

double haversine_distance(geo_point const& a, geo_point const& b) {
  auto const phi1 = to_radians(a.lat());
  auto const phi2 = to_radians(b.lat());
  auto const dphi = phi2 - phi1;
  auto const dlambda = to_radians(b.lon() - a.lon());
  auto const s1 = std::sin(dphi / 2.0);
  auto const s2 = std::sin(dlambda / 2.0);
  auto const h = std::clamp(s1 * s1 + std::cos(phi1) * std::cos(phi2) * s2 * s2, 0.0, 1.0);
  return 2.0 * kEarthRadiusKm * std::asin(std::sqrt(h));
}

double route_distance(geo_point const& src, geo_point const& dst, double circuity) {
  if (!(circuity >= 1.0) || !std::isfinite(circuity)) {
    throw invalid_circuity{circuity};
  }
  return haversine_distance(src, dst) * circuity;
}

geo_point resolve_area(std::string_view name, area_registry const& registry) {
  return registry.resolve(name);
}

area_registry parse_areas(std::istream& in, std::string const& source) {
  std::vector<area> areas;
  std::vector<std::string> fields;
  std::string line;
  auto line_no = std::size_t{0};
  auto header_seen = false;
  std::map<std::string, std::size_t, std::less<>> seen;
  while (std::getline(in, line)) {
    ++line_no;
    if (line_no == 1 && line.starts_with("\xEF\xBB\xBF")) {
      line.erase(0, 3);
    }
    if (csv::is_skippable(line)) {
      continue;
    }
    if (!csv::split_line(line, fields)) {
      throw parse_error{source, line_no, "unterminated quote"};
    }
    if (!header_seen) {
      if (fields.size() != 3 || csv::trim(fields[0]) != "name" || csv::trim(fields[1]) != "lat" ||
          csv::trim(fields[2]) != "lon") {
        throw parse_error{source, line_no, "expected header `name,lat,lon`"};
      }
      header_seen = true;
      continue;
    }
    if (fields.size() != 3) {
      throw parse_error{source, line_no, "expected 3 fields, got " + std::to_string(fields.size())};
    }
    auto const name = csv::trim(fields[0]);
    auto const lat = parse_double(csv::trim(fields[1]));
    auto const lon = parse_double(csv::trim(fields[2]));
    if (name.empty()) {
      throw parse_error{source, line_no, "empty area name"};
    }
    if (!lat || !lon) {
      throw parse_error{source, line_no, "malformed coordinate"};
    }
    try {
      areas.push_back(area{std::string{name}, geo_point{*lat, *lon}});
    } catch (invalid_coordinate const& e) {
      throw parse_error{source, line_no, e.what()};
    }
    auto key = normalize_area_name(name);
    if (seen.contains(key)) {
      throw duplicate_area{key};
    }
    seen.emplace(std::move(key), line_no);
  }
  if (!header_seen) {
    throw parse_error{source, 0, "missing header `name,lat,lon`"};
  }
  return area_registry{std::move(areas)};
}

area_registry load_areas(std::filesystem::path const& path) {
  std::ifstream in{path};
  if (!in) {
    throw io_error{"cannot open areas file " + path.string()};
  }
  return parse_areas(in, path.string());
}

}  // namespace farecmp
