/**
 * Deterministic grid layout for the schema canvas. Tables keep their
 * draft order (facts first), flow left to right in fixed-size columns,
 * and links connect box centers. No randomness, no measurement.
 */

import type { LinkDraft, SchemaDraft, TableDraft } from "./types";

export const BOX_WIDTH = 180;
export const LINE_HEIGHT = 20;
export const HEADER_HEIGHT = 26;
export const CELL_WIDTH = 220;
export const CELL_HEIGHT = 170;
export const COLUMNS = 3;
export const MARGIN = 20;

export type TableBox = {
  name: string;
  role: "fact" | "dimension";
  keys: string[];
  attributes: string[];
  x: number;
  y: number;
  width: number;
  height: number;
};

export type LinkEdge = {
  label: string;
  snowflake: boolean;
  x1: number;
  y1: number;
  x2: number;
  y2: number;
};

export type CanvasLayout = {
  boxes: TableBox[];
  edges: LinkEdge[];
  width: number;
  height: number;
};

function boxFor(table: TableDraft, role: "fact" | "dimension", index: number): TableBox {
  const column = index % COLUMNS;
  const row = Math.floor(index / COLUMNS);
  const lines = table.keys.length + table.attributes.length;
  return {
    name: table.name,
    role,
    keys: table.keys,
    attributes: table.attributes,
    x: MARGIN + column * CELL_WIDTH,
    y: MARGIN + row * CELL_HEIGHT,
    width: BOX_WIDTH,
    height: HEADER_HEIGHT + lines * LINE_HEIGHT,
  };
}

function center(box: TableBox): { x: number; y: number } {
  return { x: box.x + box.width / 2, y: box.y + box.height / 2 };
}

function edgeFor(link: LinkDraft, byName: Map<string, TableBox>): LinkEdge | null {
  const from = byName.get(link.fact_table);
  const to = byName.get(link.dimension_table);
  if (!from || !to) return null;
  const a = center(from);
  const b = center(to);
  return {
    label: `${link.fact_table}.${link.fact_key}->${link.dimension_table}`,
    snowflake: link.dimension_to_dimension,
    x1: a.x,
    y1: a.y,
    x2: b.x,
    y2: b.y,
  };
}

export function layoutDraft(draft: SchemaDraft): CanvasLayout {
  const boxes: TableBox[] = [];
  draft.fact_tables.forEach((table, i) => boxes.push(boxFor(table, "fact", i)));
  draft.dimension_tables.forEach((table, i) =>
    boxes.push(boxFor(table, "dimension", draft.fact_tables.length + i)),
  );
  const byName = new Map(boxes.map((box) => [box.name, box]));
  const edges: LinkEdge[] = [];
  for (const link of draft.links) {
    const edge = edgeFor(link, byName);
    if (edge) edges.push(edge);
  }
  const rows = Math.max(1, Math.ceil(boxes.length / COLUMNS));
  return {
    boxes,
    edges,
    width: MARGIN * 2 + COLUMNS * CELL_WIDTH,
    height: MARGIN * 2 + rows * CELL_HEIGHT,
  };
}
