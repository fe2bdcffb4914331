#include "stochmatch/matching.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "stochmatch/rng.hpp"

namespace stochmatch {

MatchingKeys::MatchingKeys(const Graph& g) : quantized_(g.num_edges(), 1) {
  bool all_equal = true;
  for (const Edge& e : g.edges())
    if (e.w != g.max_weight()) all_equal = false;
  if (all_equal) return;
  int exponent = 0;
  std::frexp(g.max_weight(), &exponent);
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    const auto q = std::llround(
        std::ldexp(g.edge(e).w, kWeightBits - exponent));
    quantized_[e] = std::max<long long>(q, 1);
    max_quantized_ = std::max(max_quantized_, quantized_[e]);
  }
}

std::uint64_t MatchingKeys::score(EdgeId e, std::uint64_t fingerprint) {
  return mix64(fingerprint ^ mix64(std::uint64_t{e} * 0xd1b54a32d192ed03ull)) >>
         32;
}

// Primal-dual maximum-weight matching on general graphs, O(n^3). Port of
// Van Rantwijk's formulation (Galil's exposition of Edmonds' algorithm),
// working on exact integer weights.
template <class Key>
class BlossomMatcher {
 public:
  struct LocalEdge {
    int i;
    int j;
    Key w;
  };

  // Returns mate[v] (local vertex or -1).
  void run(int n, const std::vector<LocalEdge>& edges, std::vector<int>& out);

 private:
  Key slack(int k) const {
    const LocalEdge& e = (*edges_)[k];
    return dual_[e.i] + dual_[e.j] - 2 * e.w;
  }
  int wrap(int j, int len) const { return j < 0 ? j + len : j; }
  int index_of(const std::vector<int>& v, int x) const {
    return static_cast<int>(std::find(v.begin(), v.end(), x) - v.begin());
  }

  void leaves(int b, std::vector<int>& out) const;
  void assign_label(int w, int t, int p);
  int scan_blossom(int v, int w);
  void add_blossom(int base, int k);
  void expand_blossom(int b, bool endstage);
  void augment_blossom(int b, int v);
  void augment_matching(int k);

  int nv_ = 0;
  const std::vector<LocalEdge>* edges_ = nullptr;
  std::vector<int> endpoint_;
  std::vector<int> nb_offset_, nb_;
  std::vector<int> mate_, label_, labelend_, inblossom_, parent_, base_,
      bestedge_, unused_;
  std::vector<std::vector<int>> childs_, endps_, best_edges_;
  std::vector<char> has_best_edges_;
  std::vector<Key> dual_;
  std::vector<char> allowed_;
  std::vector<int> queue_;
  std::vector<int> best_edge_to_, scan_path_;
};

template <class Key>
void BlossomMatcher<Key>::leaves(int b, std::vector<int>& out) const {
  if (b < nv_) {
    out.push_back(b);
    return;
  }
  for (int t : childs_[b]) {
    if (t < nv_)
      out.push_back(t);
    else
      leaves(t, out);
  }
}

template <class Key>
void BlossomMatcher<Key>::assign_label(int w, int t, int p) {
  const int b = inblossom_[w];
  label_[w] = label_[b] = t;
  labelend_[w] = labelend_[b] = p;
  bestedge_[w] = bestedge_[b] = -1;
  if (t == 1) {
    leaves(b, queue_);
  } else {
    const int base = base_[b];
    assign_label(endpoint_[mate_[base]], 1, mate_[base] ^ 1);
  }
}

template <class Key>
int BlossomMatcher<Key>::scan_blossom(int v, int w) {
  scan_path_.clear();
  int base = -1;
  while (v != -1 || w != -1) {
    int b = inblossom_[v];
    if (label_[b] & 4) {
      base = base_[b];
      break;
    }
    scan_path_.push_back(b);
    label_[b] = 5;
    if (labelend_[b] == -1) {
      v = -1;
    } else {
      v = endpoint_[labelend_[b]];
      b = inblossom_[v];
      v = endpoint_[labelend_[b]];
    }
    if (w != -1) std::swap(v, w);
  }
  for (int b : scan_path_) label_[b] = 1;
  return base;
}

template <class Key>
void BlossomMatcher<Key>::add_blossom(int base, int k) {
  int v = (*edges_)[k].i;
  int w = (*edges_)[k].j;
  const int bb = inblossom_[base];
  int bv = inblossom_[v];
  int bw = inblossom_[w];
  const int b = unused_.back();
  unused_.pop_back();
  base_[b] = base;
  parent_[b] = -1;
  parent_[bb] = b;
  std::vector<int>& path = childs_[b];
  std::vector<int>& endps = endps_[b];
  path.clear();
  endps.clear();
  while (bv != bb) {
    parent_[bv] = b;
    path.push_back(bv);
    endps.push_back(labelend_[bv]);
    v = endpoint_[labelend_[bv]];
    bv = inblossom_[v];
  }
  path.push_back(bb);
  std::reverse(path.begin(), path.end());
  std::reverse(endps.begin(), endps.end());
  endps.push_back(2 * k);
  while (bw != bb) {
    parent_[bw] = b;
    path.push_back(bw);
    endps.push_back(labelend_[bw] ^ 1);
    w = endpoint_[labelend_[bw]];
    bw = inblossom_[w];
  }
  label_[b] = 1;
  labelend_[b] = labelend_[bb];
  dual_[b] = 0;

  std::vector<int> members;
  leaves(b, members);
  for (int x : members) {
    if (label_[inblossom_[x]] == 2) queue_.push_back(x);
    inblossom_[x] = b;
  }

  std::vector<int> touched;
  auto consider = [&](int kk) {
    int i = (*edges_)[kk].i;
    int j = (*edges_)[kk].j;
    if (inblossom_[j] == b) std::swap(i, j);
    const int bj = inblossom_[j];
    if (bj != b && label_[bj] == 1 &&
        (best_edge_to_[bj] == -1 || slack(kk) < slack(best_edge_to_[bj]))) {
      if (best_edge_to_[bj] == -1) touched.push_back(bj);
      best_edge_to_[bj] = kk;
    }
  };
  for (int sub : path) {
    if (!has_best_edges_[sub]) {
      std::vector<int> sub_leaves;
      leaves(sub, sub_leaves);
      for (int x : sub_leaves)
        for (int q = nb_offset_[x]; q < nb_offset_[x + 1]; ++q)
          consider(nb_[q] / 2);
    } else {
      for (int kk : best_edges_[sub]) consider(kk);
    }
    has_best_edges_[sub] = 0;
    best_edges_[sub].clear();
    bestedge_[sub] = -1;
  }
  std::sort(touched.begin(), touched.end());
  std::vector<int>& mine = best_edges_[b];
  mine.clear();
  for (int bj : touched) {
    mine.push_back(best_edge_to_[bj]);
    best_edge_to_[bj] = -1;
  }
  has_best_edges_[b] = 1;
  bestedge_[b] = -1;
  for (int kk : mine)
    if (bestedge_[b] == -1 || slack(kk) < slack(bestedge_[b])) bestedge_[b] = kk;
}

template <class Key>
void BlossomMatcher<Key>::expand_blossom(int b, bool endstage) {
  // Copy: recursive expansion recycles blossom slots.
  const std::vector<int> children = childs_[b];
  for (int s : children) {
    parent_[s] = -1;
    if (s < nv_) {
      inblossom_[s] = s;
    } else if (endstage && dual_[s] == 0) {
      expand_blossom(s, endstage);
    } else {
      std::vector<int> members;
      leaves(s, members);
      for (int x : members) inblossom_[x] = s;
    }
  }
  if (!endstage && label_[b] == 2) {
    const std::vector<int>& ch = childs_[b];
    const std::vector<int>& ep = endps_[b];
    const int len = static_cast<int>(ch.size());
    const int entrychild = inblossom_[endpoint_[labelend_[b] ^ 1]];
    int j = index_of(ch, entrychild);
    int jstep, endptrick;
    if (j & 1) {
      j -= len;
      jstep = 1;
      endptrick = 0;
    } else {
      jstep = -1;
      endptrick = 1;
    }
    int p = labelend_[b];
    while (j != 0) {
      label_[endpoint_[p ^ 1]] = 0;
      label_[endpoint_[ep[wrap(j - endptrick, len)] ^ endptrick ^ 1]] = 0;
      assign_label(endpoint_[p ^ 1], 2, p);
      allowed_[ep[wrap(j - endptrick, len)] / 2] = 1;
      j += jstep;
      p = ep[wrap(j - endptrick, len)] ^ endptrick;
      allowed_[p / 2] = 1;
      j += jstep;
    }
    int bv = ch[wrap(j, len)];
    label_[endpoint_[p ^ 1]] = label_[bv] = 2;
    labelend_[endpoint_[p ^ 1]] = labelend_[bv] = p;
    bestedge_[bv] = -1;
    j += jstep;
    while (ch[wrap(j, len)] != entrychild) {
      bv = ch[wrap(j, len)];
      if (label_[bv] == 1) {
        j += jstep;
        continue;
      }
      std::vector<int> members;
      leaves(bv, members);
      int found = -1;
      for (int x : members)
        if (label_[x] != 0) {
          found = x;
          break;
        }
      if (found != -1) {
        label_[found] = 0;
        label_[endpoint_[mate_[base_[bv]]]] = 0;
        assign_label(found, 2, labelend_[found]);
      }
      j += jstep;
    }
  }
  label_[b] = labelend_[b] = -1;
  childs_[b].clear();
  endps_[b].clear();
  base_[b] = -1;
  best_edges_[b].clear();
  has_best_edges_[b] = 0;
  bestedge_[b] = -1;
  unused_.push_back(b);
}

template <class Key>
void BlossomMatcher<Key>::augment_blossom(int b, int v) {
  int t = v;
  while (parent_[t] != b) t = parent_[t];
  if (t >= nv_) augment_blossom(t, v);
  std::vector<int>& ch = childs_[b];
  std::vector<int>& ep = endps_[b];
  const int len = static_cast<int>(ch.size());
  const int i = index_of(ch, t);
  int j = i;
  int jstep, endptrick;
  if (i & 1) {
    j -= len;
    jstep = 1;
    endptrick = 0;
  } else {
    jstep = -1;
    endptrick = 1;
  }
  while (j != 0) {
    j += jstep;
    t = ch[wrap(j, len)];
    const int p = ep[wrap(j - endptrick, len)] ^ endptrick;
    if (t >= nv_) augment_blossom(t, endpoint_[p]);
    j += jstep;
    t = ch[wrap(j, len)];
    if (t >= nv_) augment_blossom(t, endpoint_[p ^ 1]);
    mate_[endpoint_[p]] = p ^ 1;
    mate_[endpoint_[p ^ 1]] = p;
  }
  std::rotate(ch.begin(), ch.begin() + i, ch.end());
  std::rotate(ep.begin(), ep.begin() + i, ep.end());
  base_[b] = base_[ch[0]];
}

template <class Key>
void BlossomMatcher<Key>::augment_matching(int k) {
  const int v = (*edges_)[k].i;
  const int w = (*edges_)[k].j;
  const std::pair<int, int> starts[2] = {{v, 2 * k + 1}, {w, 2 * k}};
  for (auto [s, p] : starts) {
    while (true) {
      const int bs = inblossom_[s];
      if (bs >= nv_) augment_blossom(bs, s);
      mate_[s] = p;
      if (labelend_[bs] == -1) break;
      const int t = endpoint_[labelend_[bs]];
      const int bt = inblossom_[t];
      s = endpoint_[labelend_[bt]];
      const int j = endpoint_[labelend_[bt] ^ 1];
      if (bt >= nv_) augment_blossom(bt, j);
      mate_[j] = labelend_[bt];
      p = labelend_[bt] ^ 1;
    }
  }
}

template <class Key>
void BlossomMatcher<Key>::run(int n, const std::vector<LocalEdge>& edges,
                         std::vector<int>& out) {
  nv_ = n;
  edges_ = &edges;
  const int m = static_cast<int>(edges.size());
  out.assign(n, -1);
  if (m == 0) return;

  Key maxweight = 0;
  for (const LocalEdge& e : edges) maxweight = std::max(maxweight, e.w);

  endpoint_.resize(2 * m);
  for (int k = 0; k < m; ++k) {
    endpoint_[2 * k] = edges[k].i;
    endpoint_[2 * k + 1] = edges[k].j;
  }
  nb_offset_.assign(n + 1, 0);
  for (const LocalEdge& e : edges) {
    ++nb_offset_[e.i + 1];
    ++nb_offset_[e.j + 1];
  }
  for (int x = 0; x < n; ++x) nb_offset_[x + 1] += nb_offset_[x];
  nb_.resize(2 * m);
  {
    std::vector<int> fill(nb_offset_.begin(), nb_offset_.end() - 1);
    for (int k = 0; k < m; ++k) {
      nb_[fill[edges[k].i]++] = 2 * k + 1;
      nb_[fill[edges[k].j]++] = 2 * k;
    }
  }

  mate_.assign(n, -1);
  label_.assign(2 * n, 0);
  labelend_.assign(2 * n, -1);
  inblossom_.resize(n);
  std::iota(inblossom_.begin(), inblossom_.end(), 0);
  parent_.assign(2 * n, -1);
  base_.resize(2 * n);
  std::iota(base_.begin(), base_.begin() + n, 0);
  std::fill(base_.begin() + n, base_.end(), -1);
  bestedge_.assign(2 * n, -1);
  unused_.resize(n);
  for (int b = 0; b < n; ++b) unused_[b] = 2 * n - 1 - b;  // pop() yields n first
  if (static_cast<int>(childs_.size()) < 2 * n) {
    childs_.resize(2 * n);
    endps_.resize(2 * n);
    best_edges_.resize(2 * n);
  }
  for (int b = 0; b < 2 * n; ++b) {
    childs_[b].clear();
    endps_[b].clear();
    best_edges_[b].clear();
  }
  has_best_edges_.assign(2 * n, 0);
  dual_.assign(2 * n, 0);
  std::fill(dual_.begin(), dual_.begin() + n, maxweight);
  allowed_.assign(m, 0);
  best_edge_to_.assign(2 * n, -1);
  queue_.clear();

  for (int stage = 0; stage < n; ++stage) {
    std::fill(label_.begin(), label_.end(), 0);
    std::fill(bestedge_.begin(), bestedge_.end(), -1);
    for (int b = n; b < 2 * n; ++b) {
      best_edges_[b].clear();
      has_best_edges_[b] = 0;
    }
    std::fill(allowed_.begin(), allowed_.end(), 0);
    queue_.clear();

    for (int v = 0; v < n; ++v)
      if (mate_[v] == -1 && label_[inblossom_[v]] == 0) assign_label(v, 1, -1);

    bool augmented = false;
    while (true) {
      while (!queue_.empty() && !augmented) {
        const int v = queue_.back();
        queue_.pop_back();
        for (int q = nb_offset_[v]; q < nb_offset_[v + 1]; ++q) {
          const int p = nb_[q];
          const int k = p / 2;
          const int w = endpoint_[p];
          if (inblossom_[v] == inblossom_[w]) continue;
          Key kslack = 0;
          if (!allowed_[k]) {
            kslack = slack(k);
            if (kslack <= 0) allowed_[k] = 1;
          }
          if (allowed_[k]) {
            if (label_[inblossom_[w]] == 0) {
              assign_label(w, 2, p ^ 1);
            } else if (label_[inblossom_[w]] == 1) {
              const int base = scan_blossom(v, w);
              if (base >= 0) {
                add_blossom(base, k);
              } else {
                augment_matching(k);
                augmented = true;
                break;
              }
            } else if (label_[w] == 0) {
              label_[w] = 2;
              labelend_[w] = p ^ 1;
            }
          } else if (label_[inblossom_[w]] == 1) {
            const int b = inblossom_[v];
            if (bestedge_[b] == -1 || kslack < slack(bestedge_[b]))
              bestedge_[b] = k;
          } else if (label_[w] == 0) {
            if (bestedge_[w] == -1 || kslack < slack(bestedge_[w]))
              bestedge_[w] = k;
          }
        }
      }
      if (augmented) break;

      int deltatype = 1;
      Key delta = dual_[0];
      for (int v = 1; v < n; ++v) delta = std::min(delta, dual_[v]);
      int deltaedge = -1;
      int deltablossom = -1;
      for (int v = 0; v < n; ++v) {
        if (label_[inblossom_[v]] == 0 && bestedge_[v] != -1) {
          const Key d = slack(bestedge_[v]);
          if (d < delta) {
            delta = d;
            deltatype = 2;
            deltaedge = bestedge_[v];
          }
        }
      }
      for (int b = 0; b < 2 * n; ++b) {
        if (parent_[b] == -1 && label_[b] == 1 && bestedge_[b] != -1) {
          const Key d = slack(bestedge_[b]) / 2;
          if (d < delta) {
            delta = d;
            deltatype = 3;
            deltaedge = bestedge_[b];
          }
        }
      }
      for (int b = n; b < 2 * n; ++b) {
        if (base_[b] >= 0 && parent_[b] == -1 && label_[b] == 2 &&
            dual_[b] < delta) {
          delta = dual_[b];
          deltatype = 4;
          deltablossom = b;
        }
      }

      for (int v = 0; v < n; ++v) {
        const int l = label_[inblossom_[v]];
        if (l == 1)
          dual_[v] -= delta;
        else if (l == 2)
          dual_[v] += delta;
      }
      for (int b = n; b < 2 * n; ++b) {
        if (base_[b] >= 0 && parent_[b] == -1) {
          if (label_[b] == 1)
            dual_[b] += delta;
          else if (label_[b] == 2)
            dual_[b] -= delta;
        }
      }

      if (deltatype == 1) {
        break;
      } else if (deltatype == 2) {
        allowed_[deltaedge] = 1;
        int i = edges[deltaedge].i;
        const int j = edges[deltaedge].j;
        if (label_[inblossom_[i]] == 0) i = j;
        queue_.push_back(i);
      } else if (deltatype == 3) {
        allowed_[deltaedge] = 1;
        queue_.push_back(edges[deltaedge].i);
      } else {
        expand_blossom(deltablossom, false);
      }
    }
    if (!augmented) break;

    for (int b = n; b < 2 * n; ++b)
      if (parent_[b] == -1 && base_[b] >= 0 && label_[b] == 1 && dual_[b] == 0)
        expand_blossom(b, true);
  }

  for (int v = 0; v < n; ++v)
    out[v] = mate_[v] >= 0 ? endpoint_[mate_[v]] : -1;
}

MatchingSolver::MatchingSolver(const Graph& g)
    : graph_(&g),
      keys_(g),
      narrow_(std::make_unique<BlossomMatcher<std::int64_t>>()),
      wide_(std::make_unique<BlossomMatcher<MatchKey>>()),
      stamp_(g.num_vertices(), 0),
      local_(g.num_vertices(), -1) {}

MatchingSolver::~MatchingSolver() = default;
MatchingSolver::MatchingSolver(MatchingSolver&&) noexcept = default;

template <class Key>
void MatchingSolver::solve_component(
    BlossomMatcher<Key>& matcher, int begin, int end,
    const std::vector<std::pair<int, int>>& ends,
    std::span<const EdgeId> active, std::uint64_t fp, Matching& result) {
  std::vector<typename BlossomMatcher<Key>::LocalEdge> local_edges;
  local_edges.reserve(end - begin);
  int nc = 0;
  for (int t = begin; t < end; ++t) {
    auto [a, b] = ends[bucketed_[t]];
    if (comp_local_[a] == -1) comp_local_[a] = nc++;
    if (comp_local_[b] == -1) comp_local_[b] = nc++;
    local_edges.push_back({comp_local_[a], comp_local_[b],
                           static_cast<Key>(keys_.key(active[bucketed_[t]], fp))});
  }
  matcher.run(nc, local_edges, mate_);
  for (int t = begin; t < end; ++t) {
    const auto& le = local_edges[t - begin];
    if (mate_[le.i] == le.j) result.edges.push_back(active[bucketed_[t]]);
  }
}

Matching MatchingSolver::solve(std::span<const EdgeId> active) {
  Matching result;
  if (active.empty()) return result;
  const Graph& g = *graph_;
  const std::uint64_t fp = fingerprint_ids(active);

  {
    // Star: every edge shares one vertex, so the best single edge wins.
    const Edge& first = g.edge(active[0]);
    for (VertexId hub : {first.u, first.v}) {
      std::size_t best = 0;
      MatchKey best_key = keys_.key(active[0], fp);
      bool star = true;
      for (std::size_t k = 1; k < active.size() && star; ++k) {
        const Edge& e = g.edge(active[k]);
        star = e.u == hub || e.v == hub;
        if (!star) break;
        const MatchKey key = keys_.key(active[k], fp);
        if (key > best_key) {
          best = k;
          best_key = key;
        }
      }
      if (star) {
        result.edges.push_back(active[best]);
        result.weight = g.edge(active[best]).w;
        return result;
      }
    }
  }

  if (++epoch_ == 0) {
    std::fill(stamp_.begin(), stamp_.end(), 0);
    epoch_ = 1;
  }
  verts_.clear();
  auto local = [&](VertexId x) {
    if (stamp_[x] != epoch_) {
      stamp_[x] = epoch_;
      local_[x] = static_cast<int>(verts_.size());
      verts_.push_back(x);
    }
    return local_[x];
  };
  const std::size_t m = active.size();
  std::vector<std::pair<int, int>> ends(m);
  for (std::size_t k = 0; k < m; ++k) {
    const Edge& e = g.edge(active[k]);
    ends[k] = {local(e.u), local(e.v)};
  }
  const int n = static_cast<int>(verts_.size());

  parent_.resize(n);
  std::iota(parent_.begin(), parent_.end(), 0);
  auto find = [&](int x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  };
  for (auto [a, b] : ends) {
    const int ra = find(a);
    const int rb = find(b);
    if (ra != rb) parent_[std::max(ra, rb)] = std::min(ra, rb);
  }

  // Number components by first appearance and bucket their edges.
  comp_of_.assign(n, -1);
  int num_comp = 0;
  for (int x = 0; x < n; ++x) {
    const int r = find(x);
    if (comp_of_[r] == -1) comp_of_[r] = num_comp++;
    comp_of_[x] = comp_of_[r];
  }
  comp_edges_begin_.assign(num_comp + 1, 0);
  comp_vertex_count_.assign(num_comp, 0);
  for (int x = 0; x < n; ++x) ++comp_vertex_count_[comp_of_[x]];
  for (auto [a, b] : ends) ++comp_edges_begin_[comp_of_[a] + 1];
  for (int c = 0; c < num_comp; ++c)
    comp_edges_begin_[c + 1] += comp_edges_begin_[c];
  bucketed_.resize(m);
  {
    std::vector<int> fill(comp_edges_begin_.begin(),
                          comp_edges_begin_.end() - 1);
    for (std::size_t k = 0; k < m; ++k)
      bucketed_[fill[comp_of_[ends[k].first]]++] = static_cast<EdgeId>(k);
  }

  degree_.assign(n, 0);
  comp_local_.assign(n, -1);
  for (int c = 0; c < num_comp; ++c) {
    const int begin = comp_edges_begin_[c];
    const int end = comp_edges_begin_[c + 1];
    const int count = end - begin;
    if (count == 0) continue;
    int max_degree = 0;
    for (int t = begin; t < end; ++t) {
      auto [a, b] = ends[bucketed_[t]];
      max_degree = std::max({max_degree, ++degree_[a], ++degree_[b]});
    }
    if (count == 1 || comp_vertex_count_[c] <= 3 || max_degree == count) {
      // Every pair of edges conflicts: the best single edge wins.
      int best = -1;
      MatchKey best_key = 0;
      for (int t = begin; t < end; ++t) {
        const EdgeId id = active[bucketed_[t]];
        const MatchKey key = keys_.key(id, fp);
        if (best == -1 || key > best_key) {
          best = t;
          best_key = key;
        }
      }
      result.edges.push_back(active[bucketed_[best]]);
      continue;
    }
    // 64-bit keys suffice when slack sums stay below 2^62.
    const bool narrow = keys_.max_quantized() <= 256 &&
                        comp_vertex_count_[c] < (1 << 20);
    if (narrow)
      solve_component(*narrow_, begin, end, ends, active, fp, result);
    else
      solve_component(*wide_, begin, end, ends, active, fp, result);
  }
  std::sort(result.edges.begin(), result.edges.end());
  result.weight = matching_weight(g, result.edges);
  return result;
}

Matching max_weight_matching(const Graph& g, const EdgeSet& active) {
  MatchingSolver solver(g);
  return solver.solve(active);
}

Matching brute_force_matching(const Graph& g, const EdgeSet& active) {
  if (active.size() > kBruteForceEdgeLimit)
    throw SizeLimitError("brute_force_matching: too many active edges",
                         active.size(), kBruteForceEdgeLimit);
  const MatchingKeys keys(g);
  const std::uint64_t fp = active.fingerprint();
  const std::vector<EdgeId>& ids = active.ids();
  std::vector<MatchKey> key(ids.size());
  for (std::size_t k = 0; k < ids.size(); ++k) key[k] = keys.key(ids[k], fp);

  std::vector<char> used(g.num_vertices(), 0);
  std::vector<EdgeId> current, best;
  MatchKey best_key = -1;
  auto recurse = [&](auto&& self, std::size_t k, MatchKey sum) -> void {
    if (k == ids.size()) {
      if (sum > best_key || (sum == best_key && current < best)) {
        best_key = sum;
        best = current;
      }
      return;
    }
    const Edge& e = g.edge(ids[k]);
    if (!used[e.u] && !used[e.v]) {
      used[e.u] = used[e.v] = 1;
      current.push_back(ids[k]);
      self(self, k + 1, sum + key[k]);
      current.pop_back();
      used[e.u] = used[e.v] = 0;
    }
    self(self, k + 1, sum);
  };
  recurse(recurse, 0, 0);
  Matching result;
  result.edges = best;
  result.weight = matching_weight(g, best);
  return result;
}

bool is_matching(const Graph& g, std::span<const EdgeId> edges) {
  std::vector<VertexId> touched;
  touched.reserve(2 * edges.size());
  for (EdgeId e : edges) {
    if (e >= g.num_edges()) return false;
    touched.push_back(g.edge(e).u);
    touched.push_back(g.edge(e).v);
  }
  std::sort(touched.begin(), touched.end());
  return std::adjacent_find(touched.begin(), touched.end()) == touched.end();
}

double matching_weight(const Graph& g, std::span<const EdgeId> edges) {
  double total = 0.0;
  for (EdgeId e : edges) total += g.edge(e).w;
  return total;
}

}  // namespace stochmatch
