/** Wire formats of the annotation service, mirrored one-to-one. */

export interface MentionState {
  id: number;
  token_index: number;
  surface: string;
  abbreviation: string;
  color: string;
}

export interface GroupState {
  color: string;
  members: number[];
}

export interface ClusterState {
  kind: "clustering";
  mentions: MentionState[];
  links: [number, number][];
  groups: GroupState[];
}

export type TreeNodeState =
  | { id: number; token_index: number }
  | { id: number; children: number[]; folded: boolean };

export interface TreeState {
  kind: "parsing";
  tokens: string[];
  virtual_root: number;
  next_id: number;
  nodes: TreeNodeState[];
}

export interface Snapshot {
  session_id: string;
  task_id: string;
  kind: "clustering" | "parsing";
  sentence_index: number;
  cursor: number;
  op_count: number;
  can_undo: boolean;
  can_redo: boolean;
  state: ClusterState | TreeState;
}

export interface LayoutView {
  positions: Record<string, [number, number]>;
  canvas: [number, number];
  radius: number;
}

export interface RenderedEdgeView {
  child: number;
  parent: number;
  p_child: [number, number];
  p_parent: [number, number];
  child_min_token: number;
}

export interface TreeGeometry {
  positions: Record<string, [number, number]>;
  edges: RenderedEdgeView[];
}

export interface EditIntentView {
  kind: "noop" | "delete" | "group";
  node: number | null;
  children: number[];
  reason: string | null;
}

export interface OpResponse {
  delta: Record<string, unknown> | null;
  snapshot: Snapshot;
}

export interface StrokeResponse extends OpResponse {
  intent: EditIntentView;
}

export interface TaskDescriptorView {
  task_id: string;
  kind: "clustering" | "parsing";
  payload: {
    sentences?: string[][];
    text?: string;
    mentions?: { id: number; token_index: number; surface: string }[];
  };
  display_html: string;
}

export type EditOpBody =
  | { kind: "add_link"; a: number; b: number; timestamp?: number }
  | { kind: "remove_link"; a: number; b: number; timestamp?: number }
  | { kind: "group_nodes"; children: number[]; timestamp?: number }
  | { kind: "delete_node"; node: number; timestamp?: number }
  | { kind: "toggle_fold"; node: number; timestamp?: number };

export interface ApiError {
  code: string;
  message: string;
  detail: Record<string, unknown>;
}
