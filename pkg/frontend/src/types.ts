/** Wire types for the mutation service. Vertices are 1-based on the wire;
 * all rational coefficients travel as strings. */

export interface QuiverJson {
  n: number;
  frozen: number;
  arrows: [number, number, number][];
}

export interface VariableJson {
  str: string;
  poly: unknown;
}

export interface PolygonJson {
  ngon: number;
  triangulation: [number, number][];
  diagonal_of_vertex: Record<string, [number, number]>;
  svg: string;
}

export interface SessionState {
  id: string;
  quiver: QuiverJson;
  cluster: VariableJson[];
  coefficients: string[];
  history: number[];
  classification: string;
  finiteness: string;
  polygon: PolygonJson | null;
}

export interface NeighborPreview {
  vertex: number;
  variable: VariableJson;
  cluster: string[];
  quiver: QuiverJson;
}

export interface ExchangeGraphJson {
  seeds: number;
  variables: number;
  edges: [number, number, number][];
}
