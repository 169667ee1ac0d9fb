#include "siglab/subdivision.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace siglab {

std::string midpoint_id(const std::string& a, const std::string& b) {
  return "(" + a + "+" + b + ")";
}

namespace {

// Signed volume fraction of a fragment: determinant of its barycentric
// coordinates, where column c is (e_i + e_j)/2 for interval (i, j) and the
// parent orientation is the identity matrix.
Q fragment_det(const std::vector<std::pair<int, int>>& ivs, int k) {
  DenseMat m(k + 1, k + 1);
  for (int c = 0; c <= k; ++c) {
    auto [i, j] = ivs[c];
    if (i == j) {
      m.at(i, c) = GQ(1);
    } else {
      m.at(i, c) = GQ(Q(1, 2));
      m.at(j, c) = GQ(Q(1, 2));
    }
  }
  GQ d = m.det();
  if (d.is_zero() || !d.is_real())
    throw Error(ErrorKind::CertificateFailure, "degenerate fragment");
  return d.re;
}

std::vector<Fragment> enumerate_maximal(int k) {
  std::vector<Fragment> out;
  for (unsigned word = 0; word < (1u << k); ++word) {
    int lefts = 0;
    for (int t = 0; t < k; ++t)
      if (!(word & (1u << t))) lefts++;
    int lo = lefts, hi = lefts;
    std::vector<std::pair<int, int>> ivs = {{lo, hi}};
    for (int t = 0; t < k; ++t) {
      if (word & (1u << t))
        ++hi;
      else
        --lo;
      ivs.push_back({lo, hi});
    }
    Q d = fragment_det(ivs, k);
    out.push_back({ivs, d > 0 ? 1 : -1, abs(d)});
  }
  return out;
}

}  // namespace

const std::vector<Fragment>& simplex_fragments(int k) {
  static std::map<int, std::vector<Fragment>> cache;
  auto it = cache.find(k);
  if (it == cache.end()) it = cache.emplace(k, enumerate_maximal(k)).first;
  return it->second;
}

std::vector<Fragment> simplex_fragments_dim(int k, int p) {
  // chains of length p+1 of nested intervals inside [0,k]
  std::vector<Fragment> out;
  std::vector<std::pair<int, int>> all;
  for (int i = 0; i <= k; ++i)
    for (int j = i; j <= k; ++j) all.push_back({i, j});
  std::vector<std::pair<int, int>> chain;
  std::function<void()> rec = [&]() {
    if ((int)chain.size() == p + 1) {
      Fragment f;
      f.intervals = chain;
      f.sign = 0;  // only maximal fragments carry orientation signs here
      out.push_back(f);
      return;
    }
    auto last = chain.back();
    for (auto& iv : all) {
      if (iv == last) continue;
      if (iv.first <= last.first && last.second <= iv.second) {
        chain.push_back(iv);
        rec();
        chain.pop_back();
      }
    }
  };
  for (auto& iv : all) {
    chain = {iv};
    if (p == 0) {
      out.push_back({chain, 0});
    } else {
      rec();
    }
  }
  return out;
}

long predicted_subdivision_cells(const TypedComplex& c) {
  // interior(k) = chains whose intervals' endpoints cover all of {0..k}
  auto interior = [](int k) {
    long n = 0;
    for (int p = 0; p <= k; ++p)
      for (auto& f : simplex_fragments_dim(k, p)) {
        std::vector<char> hit(k + 1, 0);
        for (auto& [i, j] : f.intervals) hit[i] = hit[j] = 1;
        if (std::all_of(hit.begin(), hit.end(), [](char x) { return x; }))
          ++n;
      }
    return n;
  };
  static std::map<int, long> cache;
  long total = 0;
  for (int k = 0; k <= c.dim(); ++k) {
    auto it = cache.find(k);
    if (it == cache.end()) it = cache.emplace(k, interior(k)).first;
    total += it->second * c.simplex_count(k);
  }
  return total;
}

TypedComplex standard_subdivide(const TypedComplex& c, long cell_cap) {
  long predicted = predicted_subdivision_cells(c);
  if (predicted > cell_cap)
    throw Error(ErrorKind::ResourceLimit,
                "subdivision would produce " + std::to_string(predicted) +
                    " cells, exceeding the cap of " + std::to_string(cell_cap));

  std::vector<TypedComplex::Vertex> verts;
  // originals keep their ids, all at type 0
  for (auto& v : c.vertices()) verts.push_back({v.id, 0, v.coords});
  // midpoints, one per parent edge, typed by the parent type gap
  for (auto& e : c.simplices(1)) {
    const auto& a = c.vertices()[e[0]];
    const auto& b = c.vertices()[e[1]];
    verts.push_back({midpoint_id(a.id, b.id), b.type - a.type,
                     ControlSpace::midpoint(a.coords, b.coords)});
  }

  auto child_vertex_id = [&](const std::vector<int>& parent_verts,
                             std::pair<int, int> iv) {
    int a = parent_verts[iv.first], b = parent_verts[iv.second];
    if (a == b || iv.first == iv.second) return c.vertices()[a].id;
    return midpoint_id(c.vertices()[a].id, c.vertices()[b].id);
  };

  std::vector<std::pair<std::vector<std::string>, int>> tops;
  for (auto& [idx, sign] : c.top()) {
    const auto& s = c.simplices(c.dim())[idx];
    for (auto& frag : simplex_fragments(c.dim())) {
      std::vector<std::string> ids;
      for (auto& iv : frag.intervals) ids.push_back(child_vertex_id(s, iv));
      tops.push_back({ids, sign * frag.sign});
    }
  }
  // non-top maximal simplices (for complexes whose tops do not cover all
  // cells, e.g. pairs keep every parent simplex): include fragments of all
  // maximal parent simplices so that closure matches the parent closure
  std::map<std::vector<int>, bool> is_face;
  for (int k = 0; k < c.dim(); ++k)
    for (auto& s : c.simplices(k)) is_face[s] = false;
  for (int k = 1; k <= c.dim(); ++k)
    for (auto& s : c.simplices(k))
      for (size_t drop = 0; drop < s.size(); ++drop) {
        std::vector<int> f = s;
        f.erase(f.begin() + drop);
        is_face[f] = true;
      }
  for (int k = 0; k < c.dim(); ++k) {
    for (auto& s : c.simplices(k)) {
      if (is_face[s]) continue;  // covered by a larger simplex
      for (auto& frag : simplex_fragments(k)) {
        std::vector<std::string> ids;
        for (auto& iv : frag.intervals) ids.push_back(child_vertex_id(s, iv));
        tops.push_back({ids, 0});
      }
    }
  }
  // also cover top-dimensional simplices that carry no sign
  {
    std::map<int, bool> signed_top;
    for (auto& [idx, sign] : c.top()) signed_top[idx] = true;
    for (int i = 0; i < c.simplex_count(c.dim()); ++i) {
      if (signed_top.count(i)) continue;
      const auto& s = c.simplices(c.dim())[i];
      for (auto& frag : simplex_fragments(c.dim())) {
        std::vector<std::string> ids;
        for (auto& iv : frag.intervals) ids.push_back(child_vertex_id(s, iv));
        tops.push_back({ids, 0});
      }
    }
  }
  return TypedComplex::build(c.space(), std::move(verts), tops);
}

std::vector<TypedComplex> iterate_subdivide(const TypedComplex& c, int levels,
                                            long cell_cap) {
  std::vector<TypedComplex> out;
  const TypedComplex* cur = &c;
  for (int j = 0; j < levels; ++j) {
    out.push_back(standard_subdivide(*cur, cell_cap));
    cur = &out.back();
  }
  return out;
}

GradedOperator subdivision_chain_map(const TypedComplex& parent,
                                     ModulePtr parent_module,
                                     const TypedComplex& child,
                                     ModulePtr child_module) {
  GradedOperator A(parent_module, child_module);
  for (int p = 0; p <= parent.dim(); ++p) {
    const auto& frags = simplex_fragments(p);
    for (int i = 0; i < parent.simplex_count(p); ++i) {
      const auto& s = parent.simplices(p)[i];
      for (auto& frag : frags) {
        std::vector<int> cverts;
        for (auto& iv : frag.intervals) {
          std::string id =
              iv.first == iv.second
                  ? parent.vertices()[s[iv.first]].id
                  : midpoint_id(parent.vertices()[s[iv.first]].id,
                                parent.vertices()[s[iv.second]].id);
          int cv = child.vertex_index(id);
          if (cv < 0)
            throw Error(ErrorKind::BadInput,
                        "child complex is missing vertex " + id);
          cverts.push_back(cv);
        }
        int j = child.simplex_index(cverts);
        if (j < 0)
          throw Error(ErrorKind::BadInput,
                      "child complex is missing a fragment simplex");
        A.add_entry(p, p, j, i, GQ(frag.sign));
      }
    }
  }
  return A;
}

}  // namespace siglab
