#pragma once

#include <cstddef>
#include <deque>
#include <iterator>
#include <optional>
#include <utility>
#include <vector>

#include "cact/change_action.hpp"
#include "cact/differential.hpp"
#include "cact/finite.hpp"
#include "cact/monoid.hpp"

namespace cact {

using ObjId = std::size_t;

// A family of change actions closed under taking change objects and finite
// products, together with a canonical derivative for every base map between
// members. differentiate leaves the base map untouched, so lift() is a
// section of the forgetful direction.
class ChangeActionModel {
 public:
  virtual ~ChangeActionModel() = default;

  virtual std::size_t object_count() const = 0;
  virtual const FiniteChangeAction& object(ObjId id) const = 0;
  virtual ObjId delta_object(ObjId id) = 0;
  virtual ObjId product_object(ObjId a, ObjId b) = 0;
  virtual std::vector<elem> differentiate(ObjId dom, ObjId cod,
                                          const std::vector<elem>& f) = 0;

  DifferentialMap lift(ObjId dom, ObjId cod, const std::vector<elem>& f) {
    DifferentialMap m{object(dom), object(cod), f, differentiate(dom, cod, f)};
    require_shapes(m);
    return m;
  }
};

// Every group acts on itself by translation; subtraction gives each base map
// exactly one derivative, df(x, d) = -f(x) + f(x + d).
class GroupModel : public ChangeActionModel {
 public:
  ObjId add_group(FiniteGroup g) {
    for (ObjId i = 0; i < groups_.size(); ++i)
      if (groups_[i].same_table(g) && groups_[i].inv == g.inv) return i;
    if (std::uint64_t(g.n) * g.n > 100 * default_max_space)
      throw SpaceTooLarge(std::uint64_t(g.n) * g.n, 100 * default_max_space);
    CheckReport rep = g.check_group_laws();
    if (!rep.passed) throw Error("group laws fail: " + rep.law);
    groups_.push_back(std::move(g));
    actions_.push_back(make_monoidal(groups_.back()));
    return groups_.size() - 1;
  }

  const FiniteGroup& group(ObjId id) const { return groups_.at(id); }
  std::size_t object_count() const override { return groups_.size(); }
  const FiniteChangeAction& object(ObjId id) const override { return actions_.at(id); }
  ObjId delta_object(ObjId id) override { return id; }

  ObjId product_object(ObjId a, ObjId b) override {
    return add_group(product_group(groups_.at(a), groups_.at(b)));
  }

  std::vector<elem> differentiate(ObjId dom, ObjId cod,
                                  const std::vector<elem>& f) override {
    const FiniteGroup& gd = groups_.at(dom);
    const FiniteGroup& gc = groups_.at(cod);
    if (f.size() != gd.n) throw ShapeMismatch("map table size does not match domain");
    std::vector<elem> df(std::size_t(gd.n) * gd.n);
    for (elem x = 0; x < gd.n; ++x)
      for (elem d = 0; d < gd.n; ++d)
        df[flatten2(x, d, gd.n)] = gc.add(gc.inverse(f[x]), f[gd.add(x, d)]);
    return df;
  }

 private:
  // deques so object references stay valid while new objects get registered
  std::deque<FiniteGroup> groups_;
  std::deque<FiniteChangeAction> actions_;
};

// One-point change monoids everywhere: each object only ever receives the
// null change, and every map is differentiable with the null derivative.
class TrivialModel : public ChangeActionModel {
 public:
  TrivialModel() { add_size(1); }

  ObjId add_size(elem n) {
    for (ObjId i = 0; i < sizes_.size(); ++i)
      if (sizes_[i] == n) return i;
    sizes_.push_back(n);
    actions_.push_back(make_trivial(n));
    return sizes_.size() - 1;
  }

  std::size_t object_count() const override { return sizes_.size(); }
  const FiniteChangeAction& object(ObjId id) const override { return actions_.at(id); }
  ObjId delta_object(ObjId) override { return add_size(1); }
  ObjId product_object(ObjId a, ObjId b) override {
    return add_size(sizes_.at(a) * sizes_.at(b));
  }

  std::vector<elem> differentiate(ObjId dom, ObjId,
                                  const std::vector<elem>& f) override {
    if (f.size() != sizes_.at(dom)) throw ShapeMismatch("map table size does not match domain");
    return std::vector<elem>(sizes_.at(dom), 0);
  }

 private:
  std::vector<elem> sizes_;
  std::deque<FiniteChangeAction> actions_;
};

// An explicit family of change actions. The initial family must already
// contain the change object of each member; products (and their change
// objects) are derived members and get added on demand. Maps are
// differentiated by pointwise search and must have exactly one derivative,
// which keeps the assignment canonical and functorial.
class FamilyTableModel : public ChangeActionModel {
 public:
  explicit FamilyTableModel(std::vector<FiniteChangeAction> objects, bool check = true)
      : objects_(std::make_move_iterator(objects.begin()), std::make_move_iterator(objects.end())) {
    for (const auto& o : objects_) {
      if (check) {
        CheckReport rep = o.check_laws();
        if (!rep.passed) throw Error("change action laws fail: " + rep.law);
      }
      if (!find(make_monoidal(o.delta)))
        throw NotClosedUnderDelta("family lacks the change object of a member");
    }
  }

  ObjId add_object(FiniteChangeAction o) {
    if (auto id = find(o)) return *id;
    objects_.push_back(std::move(o));
    return objects_.size() - 1;
  }

  std::size_t object_count() const override { return objects_.size(); }
  const FiniteChangeAction& object(ObjId id) const override { return objects_.at(id); }

  ObjId delta_object(ObjId id) override {
    FiniteChangeAction d = make_monoidal(objects_.at(id).delta);
    if (auto found = find(d)) return *found;
    // Only reachable for derived members added after construction.
    return add_object(std::move(d));
  }

  ObjId product_object(ObjId a, ObjId b) override {
    return add_object(product_action(objects_.at(a), objects_.at(b)));
  }

  std::vector<elem> differentiate(ObjId dom, ObjId cod,
                                  const std::vector<elem>& f) override {
    const FiniteChangeAction& da = objects_.at(dom);
    const FiniteChangeAction& ca = objects_.at(cod);
    if (f.size() != da.base_n) throw ShapeMismatch("map table size does not match domain");
    std::vector<elem> df(std::size_t(da.base_n) * da.delta.n);
    for (elem x = 0; x < da.base_n; ++x)
      for (elem d = 0; d < da.delta.n; ++d) {
        elem target = f[da.act(x, d)];
        std::optional<elem> pick;
        for (elem db = 0; db < ca.delta.n; ++db)
          if (ca.act(f[x], db) == target) {
            if (pick) throw Error("map has more than one derivative here");
            pick = db;
          }
        if (!pick) throw Error("map is not differentiable in this family");
        df[flatten2(x, d, da.delta.n)] = *pick;
      }
    return df;
  }

 private:
  std::optional<ObjId> find(const FiniteChangeAction& o) const {
    for (ObjId i = 0; i < objects_.size(); ++i)
      if (objects_[i].same_table(o)) return i;
    return std::nullopt;
  }

  std::deque<FiniteChangeAction> objects_;
};

}  // namespace cact
