#include "siglab/corpus.hpp"

#include <cmath>
#include <functional>

namespace siglab {

namespace {

TypedComplex make_point() {
  return TypedComplex::build(ControlSpace(1), {{"p", 0, {Q(0)}}},
                             {{{"p"}, 1}});
}

TypedComplex make_circle(int k) {
  if (k < 3)
    throw Error(ErrorKind::UnknownCorpus, "circle needs at least 3 vertices");
  std::vector<TypedComplex::Vertex> verts;
  auto type_of = [&](int i) {
    if (k % 2 == 0) return i % 2;
    return i == k - 1 ? 2 : i % 2;
  };
  if (k == 6) {
    // unit hexagon with rational vertices (3-4-5 slopes)
    std::vector<Point> pts = {{Q(0), Q(0)},          {Q(1), Q(0)},
                              {Q(8, 5), Q(4, 5)},    {Q(1), Q(8, 5)},
                              {Q(0), Q(8, 5)},       {Q(-3, 5), Q(4, 5)}};
    for (int i = 0; i < 6; ++i)
      verts.push_back({"v" + std::to_string(i), type_of(i), pts[i]});
  } else if (k == 4) {
    std::vector<Point> pts = {
        {Q(0), Q(0)}, {Q(1), Q(0)}, {Q(1), Q(1)}, {Q(0), Q(1)}};
    for (int i = 0; i < 4; ++i)
      verts.push_back({"v" + std::to_string(i), type_of(i), pts[i]});
  } else {
    // regular k-gon with dyadic-rational coordinates
    for (int i = 0; i < k; ++i) {
      double ang = 2.0 * M_PI * i / k;
      verts.push_back({"v" + std::to_string(i), type_of(i),
                       {Q(std::cos(ang)), Q(std::sin(ang))}});
    }
  }
  std::vector<std::pair<std::vector<std::string>, int>> tops;
  for (int i = 0; i < k; ++i)
    tops.push_back(
        {{"v" + std::to_string(i), "v" + std::to_string((i + 1) % k)}, 1});
  TypedComplex c = TypedComplex::build(ControlSpace(2), std::move(verts), tops);
  c.orient(1);
  return c;
}

TypedComplex make_boundary_simplex(int n) {
  // boundary of the (n+1)-simplex on vertices e_0..e_{n+1} in R^{n+2}
  if (n < 1 || n > 6)
    throw Error(ErrorKind::UnknownCorpus, "boundary_simplex_n needs 1<=n<=6");
  int nv = n + 2;
  std::vector<TypedComplex::Vertex> verts;
  for (int i = 0; i < nv; ++i) {
    Point p(nv, Q(0));
    p[i] = Q(1);
    verts.push_back({"v" + std::to_string(i), i, p});
  }
  std::vector<std::pair<std::vector<std::string>, int>> tops;
  for (int drop = 0; drop < nv; ++drop) {
    std::vector<std::string> ids;
    for (int i = 0; i < nv; ++i)
      if (i != drop) ids.push_back("v" + std::to_string(i));
    tops.push_back({ids, sign_pow(drop)});
  }
  return TypedComplex::build(ControlSpace(nv), std::move(verts), tops);
}

TypedComplex make_disk(int n) {
  if (n < 1 || n > 6)
    throw Error(ErrorKind::UnknownCorpus, "disk_n needs 1<=n<=6");
  int nv = n + 1;
  std::vector<TypedComplex::Vertex> verts;
  std::vector<std::string> ids;
  for (int i = 0; i < nv; ++i) {
    Point p(nv, Q(0));
    p[i] = Q(1);
    verts.push_back({"v" + std::to_string(i), i, p});
    ids.push_back("v" + std::to_string(i));
  }
  return TypedComplex::build(ControlSpace(nv), std::move(verts), {{ids, 1}});
}

// The 9-vertex triangulation of the complex projective plane: 36 facets,
// invariant under two commuting 3-cycles, 3-neighborly, all vertex links
// 3-spheres.  The signs orient it so that the middle intersection form is
// positive definite (signature +1).
const int kCP2Facets[36][5] = {
    {1, 2, 3, 4, 5}, {1, 2, 3, 4, 6}, {1, 2, 3, 5, 6}, {1, 2, 4, 5, 7},
    {1, 2, 4, 6, 8}, {1, 2, 4, 7, 8}, {1, 2, 5, 6, 7}, {1, 2, 6, 7, 9},
    {1, 2, 6, 8, 9}, {1, 2, 7, 8, 9}, {1, 3, 4, 5, 9}, {1, 3, 4, 6, 9},
    {1, 3, 5, 6, 7}, {1, 3, 5, 7, 8}, {1, 3, 5, 8, 9}, {1, 3, 6, 7, 9},
    {1, 3, 7, 8, 9}, {1, 4, 5, 7, 8}, {1, 4, 5, 8, 9}, {1, 4, 6, 8, 9},
    {2, 3, 4, 5, 9}, {2, 3, 4, 6, 8}, {2, 3, 4, 7, 8}, {2, 3, 4, 7, 9},
    {2, 3, 5, 6, 8}, {2, 3, 5, 8, 9}, {2, 3, 7, 8, 9}, {2, 4, 5, 7, 9},
    {2, 5, 6, 7, 9}, {2, 5, 6, 8, 9}, {3, 4, 6, 7, 8}, {3, 4, 6, 7, 9},
    {3, 5, 6, 7, 8}, {4, 5, 6, 7, 8}, {4, 5, 6, 7, 9}, {4, 5, 6, 8, 9}};
const int kCP2Signs[36] = {-1, 1,  -1, 1,  -1, 1,  1,  -1, 1,  -1, -1, 1,
                           -1, -1, -1, 1,  1,  1,  1,  -1, 1,  -1, 1,  -1,
                           1,  1,  -1, -1, -1, 1,  -1, 1,  1,  -1, 1,  -1};

TypedComplex make_cp2() {
  std::vector<TypedComplex::Vertex> verts;
  for (int v = 1; v <= 9; ++v)
    verts.push_back({"v" + std::to_string(v), v - 1,
                     {Q((v - 1) % 3), Q((v - 1) / 3)}});
  std::vector<std::pair<std::vector<std::string>, int>> tops;
  for (int f = 0; f < 36; ++f) {
    std::vector<std::string> ids;
    for (int j = 0; j < 5; ++j)
      ids.push_back("v" + std::to_string(kCP2Facets[f][j]));
    tops.push_back({ids, kCP2Signs[f]});
  }
  auto c = TypedComplex::build(ControlSpace(2), std::move(verts), tops);
  c.verify_fundamental_cycle();
  return c;
}

int shuffle_sign(const std::vector<int>& word) {
  // word of 0 (advance left factor) and 1 (advance right factor); the sign
  // is the parity of the shuffle permutation sorting all 0s before all 1s
  int sign = 1;
  int ones_seen = 0;
  for (int w : word) {
    if (w == 1)
      ones_seen++;
    else if (ones_seen % 2 == 1)
      sign = -sign;
  }
  return sign;
}

}  // namespace

TypedComplex product_complex(const TypedComplex& a, const TypedComplex& b) {
  ControlSpace space = ControlSpace::product(a.space(), b.space());
  std::vector<TypedComplex::Vertex> verts;
  for (auto& u : a.vertices())
    for (auto& v : b.vertices())
      verts.push_back({u.id + "*" + v.id, u.type + v.type,
                       ControlSpace::concat(u.coords, v.coords)});
  std::vector<std::pair<std::vector<std::string>, int>> tops;
  int p = a.dim(), q = b.dim();
  // lattice words with p zeros and q ones
  std::vector<std::vector<int>> words;
  std::vector<int> word;
  std::function<void(int, int)> gen = [&](int za, int zb) {
    if (za == 0 && zb == 0) {
      words.push_back(word);
      return;
    }
    if (za > 0) {
      word.push_back(0);
      gen(za - 1, zb);
      word.pop_back();
    }
    if (zb > 0) {
      word.push_back(1);
      gen(za, zb - 1);
      word.pop_back();
    }
  };
  gen(p, q);
  for (auto& [ia, sa] : a.top()) {
    const auto& sva = a.simplices(p)[ia];
    for (auto& [ib, sb] : b.top()) {
      const auto& svb = b.simplices(q)[ib];
      for (auto& w : words) {
        std::vector<std::string> ids;
        int i = 0, j = 0;
        ids.push_back(a.vertices()[sva[0]].id + "*" + b.vertices()[svb[0]].id);
        for (int step : w) {
          if (step == 0)
            ++i;
          else
            ++j;
          ids.push_back(a.vertices()[sva[i]].id + "*" +
                        b.vertices()[svb[j]].id);
        }
        tops.push_back({ids, sa * sb * shuffle_sign(w)});
      }
    }
  }
  auto c = TypedComplex::build(space, std::move(verts), tops);
  c.verify_fundamental_cycle();
  return c;
}

bool is_pair_name(const std::string& name) {
  return name.rfind("disk_pair_", 0) == 0;
}

TypedComplex corpus_pair_complex(const std::string& name) {
  if (!is_pair_name(name))
    throw Error(ErrorKind::UnknownCorpus, "not a pair name: " + name);
  int n = std::atoi(name.c_str() + std::string("disk_pair_").size());
  return make_disk(n);
}

TypedComplex corpus_complex(const std::string& name) {
  if (name == "point") return make_point();
  if (name == "cp2_9") return make_cp2();
  if (name.rfind("circle_", 0) == 0)
    return make_circle(std::atoi(name.c_str() + 7));
  if (name.rfind("boundary_simplex_", 0) == 0)
    return make_boundary_simplex(std::atoi(name.c_str() + 17));
  if (name.rfind("disk_pair_", 0) == 0) return corpus_pair_complex(name);
  if (name.rfind("disk_", 0) == 0)
    return make_disk(std::atoi(name.c_str() + 5));
  if (name.rfind("product(", 0) == 0 && name.back() == ')') {
    std::string inner = name.substr(8, name.size() - 9);
    // split at the top-level comma
    int depth = 0;
    size_t cut = std::string::npos;
    for (size_t i = 0; i < inner.size(); ++i) {
      if (inner[i] == '(') depth++;
      if (inner[i] == ')') depth--;
      if (inner[i] == ',' && depth == 0) {
        cut = i;
        break;
      }
    }
    if (cut == std::string::npos)
      throw Error(ErrorKind::UnknownCorpus, "malformed product name " + name);
    return product_complex(corpus_complex(inner.substr(0, cut)),
                           corpus_complex(inner.substr(cut + 1)));
  }
  throw Error(ErrorKind::UnknownCorpus, "unknown corpus name " + name);
}

}  // namespace siglab
