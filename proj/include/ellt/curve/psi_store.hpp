#pragma once

#include <filesystem>
#include <map>
#include <string>

#include "ellt/curve/cyclotomic.hpp"

namespace ellt::curve {

// On-disk division polynomials: {"a,b": {"n": ["u", "v", "d"]}} with
// components in polynomial text format.
class PsiStore {
 public:
  // A missing file is an empty store.
  static PsiStore load(const std::filesystem::path& path);
  void save(const std::filesystem::path& path) const;
  std::string dump() const;

  // Copies every psi_n the cache has computed.
  void absorb(const CycCache& cache);
  // Hands stored entries for the cache's curve to it; returns how many.
  std::size_t preload(const CycCache& cache) const;

  const std::map<long, FuncElt>* find(const WeierstrassCurve& c) const;
  std::map<std::string, std::map<long, FuncElt>>& entries() { return entries_; }

 private:
  std::map<std::string, std::map<long, FuncElt>> entries_;
};

}  // namespace ellt::curve
