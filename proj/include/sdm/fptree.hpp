#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <vector>

#include "sdm/category.hpp"
#include "sdm/flist.hpp"
#include "sdm/items.hpp"

namespace sdm {

// One unit of work routed to the shard owning `key`: a transaction's items
// reordered by descending frequency and truncated right after `key`.
struct ShardInstance {
  ItemId key;
  std::vector<ItemId> prefix;  // frequency order, prefix.back() == key
  Category target;
  bool operator==(const ShardInstance&) const = default;
};

// Prefix tree with a total count and per-category counts on every node.
// Nodes live in one arena; children are kept sorted by item id so identical
// insert multisets give identical trees.
class FPTree {
 public:
  static constexpr std::uint32_t kNoNode = 0xffffffffu;

  struct Node {
    ItemId item = 0;
    std::uint32_t parent = kNoNode;
    std::uint64_t total = 0;
    TargetCounts per_target{};
    std::vector<std::pair<ItemId, std::uint32_t>> children;
  };

  FPTree();

  void insert(std::span<const ItemId> path, std::uint64_t weight,
              const TargetCounts& per_target);
  void insert(std::span<const ItemId> path, Category target);

  const Node& node(std::uint32_t index) const { return nodes_[index]; }
  const Node& root() const { return nodes_[0]; }
  std::size_t node_count() const { return nodes_.size(); }

  // Node indices holding `item`, in insertion order; item ids ascending
  // across the map.
  const std::map<ItemId, std::vector<std::uint32_t>>& header() const {
    return header_;
  }

  // Indented text form for goldens: children in item-id order, each line
  // "item total [per-category counts]". Item ids print as dictionary
  // labels when `dict` is given.
  void dump(std::ostream& out, const ItemDictionary* dict = nullptr) const;

 private:
  std::vector<Node> nodes_;
  std::map<ItemId, std::vector<std::uint32_t>> header_;
};

// Builds the tree for one shard from its routed instances. An instance
// whose prefix does not end at `key` was routed wrong; that is an internal
// invariant violation.
FPTree build_local_fptree(ItemId key, std::span<const ShardInstance> instances);

}  // namespace sdm
