#pragma once

#include <memory>
#include <mutex>

#include "rqf/classgroup.hpp"
#include "rqf/qfield.hpp"
#include "rqf/units.hpp"

namespace rqf {

struct QuadraticField::Cache {
  std::once_flag unit_once;
  std::unique_ptr<UnitRecord> unit;
  std::once_flag class_group_once;
  std::unique_ptr<ClassGroup> class_group;
};

struct FieldCacheAccess {
  static QuadraticField::Cache& get(const QuadraticField& k) { return *k.cache_; }
};

}  // namespace rqf
