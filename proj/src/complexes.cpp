#include "siglab/complexes.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace siglab {

namespace {
int permutation_parity(std::vector<int> v) {
  // sign of the permutation sorting v ascending
  int sign = 1;
  for (size_t i = 0; i < v.size(); ++i)
    for (size_t j = i + 1; j < v.size(); ++j)
      if (v[j] < v[i]) sign = -sign;
  return sign;
}
}  // namespace

TypedComplex TypedComplex::build(
    ControlSpace space, std::vector<Vertex> vertices,
    const std::vector<std::pair<std::vector<std::string>, int>>& top) {
  TypedComplex c;
  c.space_ = std::move(space);
  c.vertices_ = std::move(vertices);
  std::map<std::string, int> vid;
  for (int i = 0; i < (int)c.vertices_.size(); ++i) {
    const auto& v = c.vertices_[i];
    if (v.id.find('|') != std::string::npos)
      throw Error(ErrorKind::BadInput, "vertex id contains '|': " + v.id);
    if (vid.count(v.id))
      throw Error(ErrorKind::BadInput, "duplicate vertex id " + v.id);
    if ((int)v.coords.size() != c.space_.total_dim())
      throw Error(ErrorKind::BadInput,
                  "vertex " + v.id + " has wrong coordinate dimension");
    vid[v.id] = i;
  }

  // resolve, canonicalize and collect top simplices
  std::vector<std::pair<std::vector<int>, int>> tops;
  int dim = -1;
  for (auto& [ids, sign] : top) {
    std::vector<int> verts;
    for (auto& id : ids) {
      auto it = vid.find(id);
      if (it == vid.end())
        throw Error(ErrorKind::DanglingVertex,
                    "top simplex references unknown vertex " + id);
      verts.push_back(it->second);
    }
    std::vector<int> types;
    for (int v : verts) types.push_back(c.vertices_[v].type);
    {
      std::set<int> tset(types.begin(), types.end());
      if (tset.size() != types.size()) {
        std::string w;
        for (auto& id : ids) w += id + " ";
        throw Error(ErrorKind::TypeClash,
                    "simplex has repeated vertex types: " + w);
      }
    }
    int parity = permutation_parity(types);
    std::vector<std::pair<int, int>> order;  // (type, vertex)
    for (size_t k = 0; k < verts.size(); ++k)
      order.push_back({types[k], verts[k]});
    std::sort(order.begin(), order.end());
    std::vector<int> canon;
    for (auto& [t, v] : order) canon.push_back(v);
    tops.push_back({canon, sign * parity});
    dim = std::max(dim, (int)canon.size() - 1);
  }
  if (dim < 0) throw Error(ErrorKind::BadInput, "complex has no simplices");
  c.dim_ = dim;

  // face closure per dimension
  auto type_less = [&](int a, int b) {
    return c.vertices_[a].type < c.vertices_[b].type;
  };
  std::vector<std::set<std::vector<int>>> closure(dim + 1);
  std::vector<std::vector<int>> stack;
  for (auto& [verts, sign] : tops) stack.push_back(verts);
  while (!stack.empty()) {
    std::vector<int> s = stack.back();
    stack.pop_back();
    int k = (int)s.size() - 1;
    if (!closure[k].insert(s).second) continue;
    if (k == 0) continue;
    for (size_t i = 0; i < s.size(); ++i) {
      std::vector<int> f = s;
      f.erase(f.begin() + i);
      stack.push_back(f);
    }
  }
  // every vertex must appear in the closure
  for (int i = 0; i < (int)c.vertices_.size(); ++i)
    if (!closure[0].count({i}))
      throw Error(ErrorKind::DanglingVertex,
                  "vertex " + c.vertices_[i].id + " is not used by any simplex");
  (void)type_less;

  c.faces_.assign(dim + 1, {});
  std::vector<std::map<std::vector<int>, int>> index(dim + 1);
  for (int k = 0; k <= dim; ++k) {
    for (auto& s : closure[k]) {
      index[k][s] = (int)c.faces_[k].size();
      c.faces_[k].push_back(s);
    }
  }
  std::map<std::vector<int>, int> topsign;
  for (auto& [verts, sign] : tops) {
    if ((int)verts.size() - 1 != dim) continue;  // lower tops carry no sign
    if (sign == 0) continue;  // closure-only entry
    if (topsign.count(verts))
      throw Error(ErrorKind::BadInput, "duplicate top simplex");
    topsign[verts] = sign;
  }
  for (auto& [verts, sign] : topsign)
    c.top_.push_back({index[dim][verts], sign});
  return c;
}

int TypedComplex::vertex_index(const std::string& id) const {
  for (int i = 0; i < (int)vertices_.size(); ++i)
    if (vertices_[i].id == id) return i;
  return -1;
}

const std::vector<std::vector<int>>& TypedComplex::simplices(int k) const {
  static const std::vector<std::vector<int>> empty;
  if (k < 0 || k > dim_) return empty;
  return faces_[k];
}

int TypedComplex::simplex_count(int k) const {
  return (k < 0 || k > dim_) ? 0 : (int)faces_[k].size();
}

int TypedComplex::total_cells() const {
  int n = 0;
  for (int k = 0; k <= dim_; ++k) n += simplex_count(k);
  return n;
}

int TypedComplex::simplex_index(const std::vector<int>& verts) const {
  int k = (int)verts.size() - 1;
  if (k < 0 || k > dim_) return -1;
  auto& fs = faces_[k];
  auto it = std::lower_bound(fs.begin(), fs.end(), verts);
  if (it != fs.end() && *it == verts) return (int)(it - fs.begin());
  return -1;
}

std::string TypedComplex::simplex_id(int k, int idx) const {
  std::string id;
  for (int v : faces_[k][idx]) {
    if (!id.empty()) id += "|";
    id += vertices_[v].id;
  }
  return id;
}

Point TypedComplex::barycenter(int k, int idx) const {
  Point b(space_.total_dim(), Q(0));
  for (int v : faces_[k][idx])
    for (size_t c = 0; c < b.size(); ++c) b[c] += vertices_[v].coords[c];
  for (auto& x : b) x /= (int)faces_[k][idx].size();
  return b;
}

ModulePtr TypedComplex::chain_module() const {
  auto m = std::make_shared<ControlledModule>(space_);
  for (int k = 0; k <= dim_; ++k)
    for (int i = 0; i < simplex_count(k); ++i)
      m->add(simplex_id(k, i), k, barycenter(k, i));
  return m;
}

GradedOperator TypedComplex::boundary(ModulePtr module) const {
  GradedOperator d(module, module);
  for (int k = 1; k <= dim_; ++k) {
    for (int i = 0; i < simplex_count(k); ++i) {
      const auto& s = faces_[k][i];
      for (size_t drop = 0; drop < s.size(); ++drop) {
        std::vector<int> f = s;
        f.erase(f.begin() + drop);
        int j = simplex_index(f);
        d.add_entry(k, k - 1, j, i, GQ(sign_pow((long)drop)));
      }
    }
  }
  return d;
}

ChainComplex TypedComplex::chains() const {
  auto m = chain_module();
  ChainComplex c{m, boundary(m)};
  c.verify();
  return c;
}

Chain TypedComplex::fundamental_cycle(ModulePtr module) const {
  Chain mu = Chain::zero(module, dim_);
  for (auto& [idx, sign] : top_) mu.coef[idx] += GQ(sign);
  return mu;
}

void TypedComplex::verify_fundamental_cycle() const {
  auto c = chains();
  Chain mu = fundamental_cycle(c.module);
  if (mu.is_zero())
    throw Error(ErrorKind::NotACycle, "no top-dimensional cells carry signs");
  if (c.d.has_block(dim_) && !apply(c.d, mu).is_zero())
    throw Error(ErrorKind::NotACycle,
                "signed top cells do not form a cycle");
}

void TypedComplex::orient(int root_sign) {
  if (dim_ == 0) {
    top_.clear();
    for (int i = 0; i < simplex_count(0); ++i) top_.push_back({i, root_sign});
    return;
  }
  // ridge -> incident top cells
  std::map<std::vector<int>, std::vector<std::pair<int, int>>> ridge;
  for (int i = 0; i < simplex_count(dim_); ++i) {
    const auto& s = faces_[dim_][i];
    for (size_t drop = 0; drop < s.size(); ++drop) {
      std::vector<int> f = s;
      f.erase(f.begin() + drop);
      ridge[f].push_back({i, sign_pow((long)drop)});
    }
  }
  for (auto& [f, inc] : ridge)
    if (inc.size() != 2)
      throw Error(ErrorKind::NotACycle,
                  "complex is not a closed pseudomanifold: ridge shared by " +
                      std::to_string(inc.size()) + " top cells");
  std::vector<int> sign(simplex_count(dim_), 0);
  std::vector<int> queue = {0};
  sign[0] = root_sign;
  // adjacency via ridges
  std::map<int, std::vector<std::pair<int, int>>> nbr;  // top -> (top, rel)
  for (auto& [f, inc] : ridge) {
    auto [i, si] = inc[0];
    auto [j, sj] = inc[1];
    // mu_i * si + mu_j * sj = 0  =>  mu_j = -mu_i * si / sj
    int rel = -si * sj;
    nbr[i].push_back({j, rel});
    nbr[j].push_back({i, rel});
  }
  while (!queue.empty()) {
    int i = queue.back();
    queue.pop_back();
    for (auto& [j, rel] : nbr[i]) {
      int want = sign[i] * rel;
      if (sign[j] == 0) {
        sign[j] = want;
        queue.push_back(j);
      } else if (sign[j] != want) {
        throw Error(ErrorKind::NotACycle, "complex is not orientable");
      }
    }
  }
  for (int i = 0; i < simplex_count(dim_); ++i)
    if (sign[i] == 0)
      throw Error(ErrorKind::NotACycle,
                  "top cells are not ridge-connected");
  top_.clear();
  for (int i = 0; i < simplex_count(dim_); ++i) top_.push_back({i, sign[i]});
  verify_fundamental_cycle();
}

int TypedComplex::max_vertex_degree() const {
  std::vector<int> deg(vertices_.size(), 0);
  for (int k = 1; k <= dim_; ++k)
    for (auto& s : faces_[k])
      for (int v : s) deg[v]++;
  int m = 0;
  for (int d : deg) m = std::max(m, d);
  return m;
}

void TypedComplex::check_bounded_geometry(int bound) const {
  int d = max_vertex_degree();
  if (d > bound)
    throw Error(ErrorKind::BadInput,
                "bounded geometry violated: vertex degree " +
                    std::to_string(d) + " exceeds " + std::to_string(bound));
}

Q TypedComplex::mesh2() const {
  Q best(0);
  for (int k = 1; k <= dim_; ++k)
    for (auto& s : faces_[k])
      for (size_t a = 0; a < s.size(); ++a)
        for (size_t b = a + 1; b < s.size(); ++b) {
          Q d = space_.dist2(vertices_[s[a]].coords, vertices_[s[b]].coords);
          if (d > best) best = std::move(d);
        }
  return best;
}

double TypedComplex::mesh() const { return std::sqrt(mesh2().get_d()); }

void TypedComplex::validate(bool closed) const {
  for (int k = 0; k <= dim_; ++k) {
    for (auto& s : faces_[k]) {
      std::set<int> types;
      for (int v : s) {
        if (v < 0 || v >= (int)vertices_.size())
          throw Error(ErrorKind::DanglingVertex, "bad vertex index");
        types.insert(vertices_[v].type);
      }
      if (types.size() != s.size())
        throw Error(ErrorKind::TypeClash, "repeated type inside a simplex");
      for (size_t a = 0; a + 1 < s.size(); ++a)
        if (vertices_[s[a]].type >= vertices_[s[a + 1]].type)
          throw Error(ErrorKind::TypeClash,
                      "simplex vertices not in ascending type order");
      // faces present
      if (k > 0)
        for (size_t drop = 0; drop < s.size(); ++drop) {
          std::vector<int> f = s;
          f.erase(f.begin() + drop);
          if (simplex_index(f) < 0)
            throw Error(ErrorKind::BadInput, "face closure violated");
        }
    }
  }
  if (closed && dim_ > 0) {
    std::map<std::vector<int>, int> ridge_count;
    for (auto& [idx, sign] : top_) {
      const auto& s = faces_[dim_][idx];
      for (size_t drop = 0; drop < s.size(); ++drop) {
        std::vector<int> f = s;
        f.erase(f.begin() + drop);
        ridge_count[f]++;
      }
    }
    for (auto& [f, n] : ridge_count)
      if (n != 2)
        throw Error(ErrorKind::NotClosed,
                    "ridge contained in " + std::to_string(n) + " top cells");
    verify_fundamental_cycle();
  }
}

}  // namespace siglab
