#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "binpack/rational.hpp"

namespace binpack {

// Size classes partitioning (0, 1]:
//   Small  (0, 1/3]   Medium (1/3, 1/2]   Large (1/2, 2/3)   XLarge [2/3, 1]
enum class ItemClass { Small, Medium, Large, XLarge };

const char* to_string(ItemClass c);

// Exact classification. Boundary cases: 1/3 -> Small, 1/2 -> Medium,
// 2/3 -> XLarge, 1 -> XLarge. Sizes outside (0, 1] throw std::domain_error.
ItemClass classify(const Rational& size);

struct Item {
  std::size_t index = 0;  // position in the arrival order, 0-based
  Rational size;
  ItemClass cls = ItemClass::Small;
};

struct Instance {
  std::string label;
  std::vector<Item> items;

  std::size_t count(ItemClass c) const;
  bool empty() const { return items.empty(); }
  std::size_t size() const { return items.size(); }
};

// Total size of all items.
Rational size_of(const Instance& inst);

// Total size of items of one class.
Rational size_of(const Instance& inst, ItemClass c);

// Builds an instance from raw sizes (indices and classes filled in).
Instance make_instance(std::string label, const std::vector<Rational>& sizes);

// Instance file format: UTF-8 text, one size per line, either "p/q" or an
// exact decimal. '#' starts a comment (whole line or trailing); blank lines
// are ignored. Errors name the offending 1-based line number.
Instance parse_instance(std::istream& in, std::string label);
Instance parse_instance_file(const std::string& path);

// Writes the instance in the same format (sizes as "p/q", one per line).
void write_instance(std::ostream& out, const Instance& inst);
void write_instance_file(const std::string& path, const Instance& inst);

}  // namespace binpack
