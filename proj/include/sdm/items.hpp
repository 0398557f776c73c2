#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

namespace sdm {

using ItemId = std::uint32_t;

// One discretized attribute=value pair.
struct Item {
  std::string attribute;
  std::string value;
  bool operator==(const Item&) const = default;
};

// Interns attribute=value pairs to dense ids. Ids are assigned in first-seen
// order, so feeding courses through in a fixed sequence gives a stable
// dictionary. Shared across courses within one run.
class ItemDictionary {
 public:
  ItemId intern(const std::string& attribute, const std::string& value);
  // Lookup without inserting; returns false if unknown.
  bool find(const std::string& attribute, const std::string& value,
            ItemId& out) const;
  const Item& item(ItemId id) const;
  const std::string& attribute_of(ItemId id) const;
  std::size_t size() const { return items_.size(); }
  // "attribute=value" for diagnostics and dumps.
  std::string label(ItemId id) const;

 private:
  std::vector<Item> items_;
  std::unordered_map<std::string, ItemId> index_;  // key: attr + '\x1f' + value
};

}  // namespace sdm
