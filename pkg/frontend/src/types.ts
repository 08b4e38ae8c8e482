/** Shared wire and model types for the canvas studio. */

export type ElementKindName =
  | "key_resource"
  | "key_activity"
  | "key_partnership"
  | "customer_segment"
  | "value_proposition"
  | "channel"
  | "customer_relationship"
  | "revenue_stream"
  | "cost_structure";

export type RelationshipKindName = "supports" | "determines" | "affects";

export interface ElementJson {
  id: string;
  kind: ElementKindName;
  name: string;
  desc?: string;
  vrin?: [boolean, boolean, boolean, boolean];
  children?: ElementJson[];
}

export interface RelationshipJson {
  source: string;
  target: string;
  kind: RelationshipKindName;
  label?: string;
}

export interface BusinessModelJson {
  name: string;
  elements: ElementJson[];
  relationships: RelationshipJson[];
  business_models?: BusinessModelJson[];
}

export interface ModelJson {
  format: "bmc-model";
  version: 1;
  enterprise: {
    name: string;
    business_models: BusinessModelJson[];
  };
}

export interface Diagnostic {
  severity: "error" | "warning";
  code: string;
  message: string;
  span?: { start: number; end: number };
  rule?: string;
  hint?: string;
}

export interface ValidateResponse {
  ok: boolean;
  diagnostics: Diagnostic[];
  model?: ModelJson;
}

export interface InferResponse {
  entry: "required" | "reverse-only";
  kind: RelationshipKindName;
}

export interface MatrixEntry {
  src: string;
  dst: string;
  entry: "required" | "reverse-only";
  kind: RelationshipKindName;
}

export interface FormatResponse {
  ok: boolean;
  text?: string;
  diagnostics: Diagnostic[];
}

export type SourceFormat = "dsl" | "json";
