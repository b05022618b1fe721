#include "ellt/curve/psi_store.hpp"

#include "json.hpp"

#include "ellt/errors.hpp"
#include "ellt/util/atomic_file.hpp"

namespace ellt::curve {

using nlohmann::json;

PsiStore PsiStore::load(const std::filesystem::path& path) {
  PsiStore store;
  if (!std::filesystem::exists(path)) return store;
  json doc;
  try {
    doc = json::parse(util::read_file(path));
  } catch (const json::exception& e) {
    throw ValidationError("division polynomial cache '" + path.string() + "' is not valid JSON: " + e.what());
  }
  if (!doc.is_object()) throw ValidationError("division polynomial cache '" + path.string() + "' must be an object");
  for (auto& [key, table] : doc.items()) {
    if (!table.is_object()) throw ValidationError("cache entry '" + key + "' must be an object");
    auto& out = store.entries_[key];
    for (auto& [n, triple] : table.items()) {
      if (!triple.is_array() || triple.size() != 3)
        throw ValidationError("cache entry " + key + "/" + n + " must be [u, v, d]");
      long idx = 0;
      try {
        idx = std::stol(n);
      } catch (const std::exception&) {
        throw ValidationError("cache index '" + n + "' is not an integer");
      }
      out[idx] = FuncElt(exact::parse_poly(triple[0].get<std::string>()), exact::parse_poly(triple[1].get<std::string>()),
                         exact::parse_poly(triple[2].get<std::string>()));
    }
  }
  return store;
}

std::string PsiStore::dump() const {
  json doc = json::object();
  for (const auto& [key, table] : entries_) {
    json t = json::object();
    for (const auto& [n, f] : table)
      t[std::to_string(n)] = json::array({exact::to_string(f.u()), exact::to_string(f.v()), exact::to_string(f.d())});
    doc[key] = std::move(t);
  }
  return doc.dump(1) + "\n";
}

void PsiStore::save(const std::filesystem::path& path) const { util::write_atomic(path, dump()); }

void PsiStore::absorb(const CycCache& cache) {
  auto& out = entries_[cache.curve().key()];
  for (auto& [n, f] : cache.psi_snapshot()) out[n] = f;
}

std::size_t PsiStore::preload(const CycCache& cache) const {
  const auto* table = find(cache.curve());
  if (!table) return 0;
  for (const auto& [n, f] : *table) cache.preload_psi(n, f);
  return table->size();
}

const std::map<long, FuncElt>* PsiStore::find(const WeierstrassCurve& c) const {
  auto it = entries_.find(c.key());
  return it == entries_.end() ? nullptr : &it->second;
}

}  // namespace ellt::curve
