#include "sdm/items.hpp"

#include "sdm/errors.hpp"

namespace sdm {

namespace {
std::string make_key(const std::string& attribute, const std::string& value) {
  std::string key;
  key.reserve(attribute.size() + value.size() + 1);
  key += attribute;
  key += '\x1f';
  key += value;
  return key;
}
}  // namespace

ItemId ItemDictionary::intern(const std::string& attribute,
                              const std::string& value) {
  auto [it, inserted] = index_.try_emplace(make_key(attribute, value),
                                           static_cast<ItemId>(items_.size()));
  if (inserted) items_.push_back(Item{attribute, value});
  return it->second;
}

bool ItemDictionary::find(const std::string& attribute,
                          const std::string& value, ItemId& out) const {
  auto it = index_.find(make_key(attribute, value));
  if (it == index_.end()) return false;
  out = it->second;
  return true;
}

const Item& ItemDictionary::item(ItemId id) const {
  if (id >= items_.size())
    throw InternalError("item id " + std::to_string(id) +
                        " outside dictionary of size " +
                        std::to_string(items_.size()));
  return items_[id];
}

const std::string& ItemDictionary::attribute_of(ItemId id) const {
  return item(id).attribute;
}

std::string ItemDictionary::label(ItemId id) const {
  const Item& it = item(id);
  return it.attribute + "=" + it.value;
}

}  // namespace sdm
