pub struct BasisDiscretization;
pub struct DyadicMesh;
pub struct LinearizationPlan;
