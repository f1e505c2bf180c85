#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

namespace graphr {

namespace detail {

/// Blocks of 2 MiB or more are 2 MiB-aligned and advised as transparent huge pages. Smaller
/// blocks use operator new.
void* huge_page_allocate(std::size_t bytes);
void huge_page_deallocate(void* p, std::size_t bytes) noexcept;

template <class T>
struct HugePageAllocator {
  using value_type = T;
  HugePageAllocator() = default;
  template <class U>
  HugePageAllocator(const HugePageAllocator<U>&) noexcept {}
  T* allocate(std::size_t n) { return static_cast<T*>(huge_page_allocate(n * sizeof(T))); }
  void deallocate(T* p, std::size_t n) noexcept { huge_page_deallocate(p, n * sizeof(T)); }
  template <class U>
  bool operator==(const HugePageAllocator<U>&) const noexcept { return true; }
};

}  // namespace detail

/// Suffix automaton over bytes with endpos-size (occurrence) counts.
///
/// Each state is one 32-byte record holding its first three transitions inline. Further
/// transitions live in a contiguous block of a shared pool; a full block is copied to a new
/// block of twice the capacity.
class SuffixAutomaton {
public:
  explicit SuffixAutomaton(std::string_view text);

  std::size_t size() const { return states_.size(); }
  std::int32_t len(std::size_t i) const { return states_[i].len; }
  /// Suffix link, -1 for the root.
  std::int32_t link(std::size_t i) const { return states_[i].link; }
  /// End index (inclusive) of the first occurrence of state i's strings.
  std::int32_t first_end(std::size_t i) const { return first_end_[i]; }
  /// Number of end positions of state i, i.e. occurrences of every string in it.
  std::int64_t occurrences(std::size_t i) const { return occ_[i]; }

  /// Occurrences of `pattern` in the text (overlapping), 0 if absent.
  std::int64_t count(std::string_view pattern) const;

private:
  static constexpr int kInlineEdges = 3;

  struct alignas(32) State {
    std::int32_t len = 0;
    std::int32_t link = -1;
    /// Offset of the spilled-edge block in edges_.
    std::int32_t spill = 0;
    std::uint8_t spill_count = 0;
    std::uint8_t inline_count = 0;
    std::uint8_t symbols[kInlineEdges] = {};
    std::int32_t targets[kInlineEdges] = {};
  };
  static_assert(sizeof(State) == 32);

  struct Edge {
    std::int32_t target;
    unsigned char symbol;
  };

  template <class T>
  using Buffer = std::vector<T, detail::HugePageAllocator<T>>;

  std::int32_t find(std::int32_t state, unsigned char c) const;
  void set(std::int32_t state, unsigned char c, std::int32_t target);
  std::int32_t allocate_spill(std::size_t capacity);
  void extend(unsigned char c, std::int32_t position);
  void propagate_counts();

  Buffer<State> states_;
  Buffer<Edge> edges_;
  Buffer<std::int32_t> first_end_;
  Buffer<std::int32_t> occ_;
  std::int32_t last_ = 0;
};

}  // namespace graphr
