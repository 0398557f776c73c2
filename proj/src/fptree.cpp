#include "sdm/fptree.hpp"

#include <algorithm>
#include <ostream>

#include "sdm/errors.hpp"

namespace sdm {

FPTree::FPTree() { nodes_.emplace_back(); }

void FPTree::insert(std::span<const ItemId> path, std::uint64_t weight,
                    const TargetCounts& per_target) {
  std::uint32_t cur = 0;
  for (ItemId item : path) {
    Node& parent = nodes_[cur];
    auto it = std::lower_bound(
        parent.children.begin(), parent.children.end(), item,
        [](const auto& child, ItemId id) { return child.first < id; });
    std::uint32_t next;
    if (it != parent.children.end() && it->first == item) {
      next = it->second;
    } else {
      next = static_cast<std::uint32_t>(nodes_.size());
      parent.children.insert(it, {item, next});
      Node n;
      n.item = item;
      n.parent = cur;
      nodes_.push_back(std::move(n));
      header_[item].push_back(next);
    }
    Node& node = nodes_[next];
    node.total += weight;
    for (std::size_t k = 0; k < kNumCategories; ++k)
      node.per_target[k] += per_target[k];
    cur = next;
  }
}

void FPTree::insert(std::span<const ItemId> path, Category target) {
  TargetCounts unit{};
  unit[static_cast<std::size_t>(target)] = 1;
  insert(path, 1, unit);
}

namespace {
void dump_node(std::ostream& out, const FPTree& tree, std::uint32_t index,
               int depth, const ItemDictionary* dict) {
  const FPTree::Node& n = tree.node(index);
  for (int i = 0; i < depth; ++i) out << "  ";
  if (dict)
    out << dict->label(n.item);
  else
    out << '#' << n.item;
  out << ' ' << n.total << " [";
  for (std::size_t k = 0; k < kNumCategories; ++k) {
    if (k) out << ',';
    out << n.per_target[k];
  }
  out << "]\n";
  for (const auto& [item, child] : n.children)
    dump_node(out, tree, child, depth + 1, dict);
}
}  // namespace

void FPTree::dump(std::ostream& out, const ItemDictionary* dict) const {
  out << "root\n";
  for (const auto& [item, child] : nodes_[0].children)
    dump_node(out, *this, child, 1, dict);
}

FPTree build_local_fptree(ItemId key,
                          std::span<const ShardInstance> instances) {
  FPTree tree;
  for (const ShardInstance& inst : instances) {
    if (inst.key != key || inst.prefix.empty() || inst.prefix.back() != key)
      throw InternalError(
          "instance routed to shard " + std::to_string(key) +
          " does not end at its key item");
    tree.insert(inst.prefix, inst.target);
  }
  return tree;
}

}  // namespace sdm
