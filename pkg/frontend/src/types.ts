export type ScanMode = "thresh" | "gray" | "color";

export interface Pt {
  x: number;
  y: number;
}

export interface QuadWire {
  tl: Pt;
  tr: Pt;
  bl: Pt;
  br: Pt;
}

export interface SessionCreated {
  id: string;
  detected_quad: QuadWire;
}
