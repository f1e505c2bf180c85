#include "graphr/suffix_automaton.hpp"

#include <sys/mman.h>

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <new>

namespace graphr {

namespace detail {

namespace {
constexpr std::size_t kHugePage = std::size_t{2} << 20;
}

void* huge_page_allocate(std::size_t bytes) {
  if (bytes < kHugePage) return ::operator new(bytes);
  const std::size_t rounded = (bytes + kHugePage - 1) / kHugePage * kHugePage;
  void* p = std::aligned_alloc(kHugePage, rounded);
  if (!p) throw std::bad_alloc();
#ifdef MADV_HUGEPAGE
  ::madvise(p, rounded, MADV_HUGEPAGE);
#endif
  return p;
}

void huge_page_deallocate(void* p, std::size_t bytes) noexcept {
  if (bytes < kHugePage)
    ::operator delete(p);
  else
    std::free(p);
}

}  // namespace detail


namespace {

// Spill blocks hold 4, 8, 16, ... edges; a block is full when its count is a power of two >= 4.
std::size_t spill_capacity(std::size_t count) { return count == 0 ? 0 : std::max<std::size_t>(4, std::bit_ceil(count)); }

}  // namespace

SuffixAutomaton::SuffixAutomaton(std::string_view text) {
  states_.reserve(2 * text.size() + 1);
  first_end_.reserve(2 * text.size() + 1);
  occ_.reserve(2 * text.size() + 1);
  edges_.reserve(text.size() / 2 + 16);
  states_.push_back(State{});
  first_end_.push_back(-1);
  occ_.push_back(0);
  for (std::size_t i = 0; i < text.size(); ++i)
    extend(static_cast<unsigned char>(text[i]), static_cast<std::int32_t>(i));
  propagate_counts();
}

std::int32_t SuffixAutomaton::find(std::int32_t state, unsigned char c) const {
  const State& s = states_[state];
  for (int k = 0; k < s.inline_count; ++k)
    if (s.symbols[k] == c) return s.targets[k];
  const Edge* spill = edges_.data() + s.spill;
  for (int k = 0; k < s.spill_count; ++k)
    if (spill[k].symbol == c) return spill[k].target;
  return -1;
}

std::int32_t SuffixAutomaton::allocate_spill(std::size_t capacity) {
  const auto offset = static_cast<std::int32_t>(edges_.size());
  edges_.resize(edges_.size() + capacity);
  return offset;
}

void SuffixAutomaton::set(std::int32_t state, unsigned char c, std::int32_t target) {
  State& s = states_[state];
  for (int k = 0; k < s.inline_count; ++k) {
    if (s.symbols[k] == c) {
      s.targets[k] = target;
      return;
    }
  }
  for (int k = 0; k < s.spill_count; ++k) {
    if (edges_[s.spill + k].symbol == c) {
      edges_[s.spill + k].target = target;
      return;
    }
  }
  if (s.inline_count < kInlineEdges) {
    s.symbols[s.inline_count] = c;
    s.targets[s.inline_count] = target;
    ++s.inline_count;
    return;
  }
  if (s.spill_count == spill_capacity(s.spill_count)) {
    const std::int32_t moved = allocate_spill(spill_capacity(s.spill_count + 1u));
    std::copy_n(edges_.begin() + s.spill, s.spill_count, edges_.begin() + moved);
    s.spill = moved;
  }
  edges_[s.spill + s.spill_count] = Edge{target, c};
  ++s.spill_count;
}

void SuffixAutomaton::extend(unsigned char c, std::int32_t position) {
  const auto cur = static_cast<std::int32_t>(states_.size());
  State fresh;
  fresh.len = states_[last_].len + 1;
  states_.push_back(fresh);
  first_end_.push_back(position);
  occ_.push_back(1);
  std::int32_t p = last_;
  while (p != -1 && find(p, c) == -1) {
    set(p, c, cur);
    p = states_[p].link;
  }
  if (p == -1) {
    states_[cur].link = 0;
  } else {
    const std::int32_t q = find(p, c);
    if (states_[p].len + 1 == states_[q].len) {
      states_[cur].link = q;
    } else {
      const auto clone = static_cast<std::int32_t>(states_.size());
      State copy = states_[q];
      copy.len = states_[p].len + 1;
      if (copy.spill_count > 0) {
        copy.spill = allocate_spill(spill_capacity(copy.spill_count));
        std::copy_n(edges_.begin() + states_[q].spill, copy.spill_count, edges_.begin() + copy.spill);
      }
      states_.push_back(copy);
      first_end_.push_back(first_end_[q]);
      occ_.push_back(0);
      while (p != -1 && find(p, c) == q) {
        set(p, c, clone);
        p = states_[p].link;
      }
      states_[q].link = clone;
      states_[cur].link = clone;
    }
  }
  last_ = cur;
  // The next extension starts by walking from cur to its suffix link.
  __builtin_prefetch(&states_[states_[cur].link]);
}

void SuffixAutomaton::propagate_counts() {
  // Counting sort by len gives a topological order; push counts up suffix links. Each sorted
  // entry carries its link so the final pass only touches occ_.
  struct Item {
    std::int32_t state;
    std::int32_t link;
  };
  std::int32_t max_len = 0;
  for (const auto& s : states_) max_len = std::max(max_len, s.len);
  Buffer<std::int32_t> bucket(static_cast<std::size_t>(max_len) + 2, 0);
  for (const auto& s : states_) ++bucket[s.len];
  for (std::size_t i = 1; i < bucket.size(); ++i) bucket[i] += bucket[i - 1];
  Buffer<Item> order(states_.size());
  for (auto i = static_cast<std::int32_t>(states_.size()); i-- > 0;)
    order[--bucket[states_[i].len]] = Item{i, states_[i].link};
  for (auto k = order.size(); k-- > 1;) {
    const Item& it = order[k];
    if (it.link >= 0) occ_[it.link] += occ_[it.state];
  }
}

std::int64_t SuffixAutomaton::count(std::string_view pattern) const {
  std::int32_t state = 0;
  for (char ch : pattern) {
    state = find(state, static_cast<unsigned char>(ch));
    if (state == -1) return 0;
  }
  return pattern.empty() ? 0 : occ_[state];
}

}  // namespace graphr
