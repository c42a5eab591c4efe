#include "binpack/model.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace binpack {

const char* to_string(ItemClass c) {
  switch (c) {
    case ItemClass::Small: return "S";
    case ItemClass::Medium: return "M";
    case ItemClass::Large: return "L";
    case ItemClass::XLarge: return "XL";
  }
  return "?";
}

ItemClass classify(const Rational& size) {
  static const Rational third(1, 3), half(1, 2), two_thirds(2, 3), one(1);
  if (size.sign() <= 0 || size > one)
    throw std::domain_error("classify: size " + size.str() + " outside (0, 1]");
  if (size <= third) return ItemClass::Small;
  if (size <= half) return ItemClass::Medium;
  if (size < two_thirds) return ItemClass::Large;
  return ItemClass::XLarge;
}

std::size_t Instance::count(ItemClass c) const {
  std::size_t n = 0;
  for (const auto& it : items)
    if (it.cls == c) ++n;
  return n;
}

Rational size_of(const Instance& inst) {
  Rational total;
  for (const auto& it : inst.items) total += it.size;
  return total;
}

Rational size_of(const Instance& inst, ItemClass c) {
  Rational total;
  for (const auto& it : inst.items)
    if (it.cls == c) total += it.size;
  return total;
}

Instance make_instance(std::string label, const std::vector<Rational>& sizes) {
  Instance inst;
  inst.label = std::move(label);
  inst.items.reserve(sizes.size());
  for (std::size_t i = 0; i < sizes.size(); ++i)
    inst.items.push_back(Item{i, sizes[i], classify(sizes[i])});
  return inst;
}

Instance parse_instance(std::istream& in, std::string label) {
  Instance inst;
  inst.label = std::move(label);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    auto e = line.find_last_not_of(" \t\r");
    std::string tok = line.substr(b, e - b + 1);
    Rational size;
    try {
      size = Rational::parse(tok);
    } catch (const std::invalid_argument& ex) {
      throw std::invalid_argument(inst.label + ": line " + std::to_string(lineno) + ": " +
                                  ex.what());
    }
    if (size.sign() <= 0 || size > Rational(1))
      throw std::invalid_argument(inst.label + ": line " + std::to_string(lineno) + ": size " +
                                  size.str() + " outside (0, 1]");
    std::size_t idx = inst.items.size();
    inst.items.push_back(Item{idx, size, classify(size)});
  }
  return inst;
}

Instance parse_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open instance file: " + path);
  std::string label = path;
  auto slash = label.find_last_of('/');
  if (slash != std::string::npos) label = label.substr(slash + 1);
  return parse_instance(in, label);
}

void write_instance(std::ostream& out, const Instance& inst) {
  out << "# " << inst.label << "\n";
  for (const auto& it : inst.items) out << it.size.str_pq() << "\n";
}

void write_instance_file(const std::string& path, const Instance& inst) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write instance file: " + path);
  write_instance(out, inst);
}

}  // namespace binpack
